#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nts/table.hpp"

namespace nts {

/**
 * Porter's suffix-stripping stemmer, matching the reference implementation
 * (including its documented departures from the 1980 write-up: bli->ble,
 * logi->log, words of length <= 2 unchanged). Expects a lowercase token;
 * bytes outside a-z are treated as consonants and survive untouched.
 */
std::string porter_stem(std::string_view token);

/**
 * Splits on spaces, periods, underscores and hyphens, lowercases A-Z, stems
 * each token. Consecutive delimiters produce no empty tokens.
 */
std::vector<std::string> normalize_tokens(std::string_view raw);

/** normalize_tokens joined with single spaces ("IT-Hardware" -> "it hardwar"). */
std::string normalize_value(std::string_view raw);

/**
 * The normalized active domain of one attribute. Null cells are skipped;
 * counts sum to the attribute's non-null cell count. Both views are sorted
 * by value.
 */
struct NormalizedDomain {
    std::vector<std::string> as_set;
    std::vector<std::pair<std::string, std::size_t>> as_multiset;
    std::size_t total = 0;

    bool empty() const { return total == 0; }
};

NormalizedDomain extract_domain(const Table& t, const std::string& attr);

}  // namespace nts
