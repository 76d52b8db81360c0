#pragma once

#include <stdexcept>
#include <string>

namespace nts {

/** Bad input data: schema violations, malformed alignments, contract breaches. */
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

/** Filesystem or parse failures while reading or writing artifacts. */
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

/** Unusable run configuration: unknown method, out-of-range hyperparameters. */
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace nts
