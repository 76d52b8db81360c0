#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "nts/rankers.hpp"

namespace nts {

/** Everything a subcommand needs, as parsed from flags. */
struct RunConfig {
    std::filesystem::path query;       // query table CSV
    std::filesystem::path lake;        // directory of candidate CSVs
    std::filesystem::path alignments;  // alignment CSV (defaults to lake/alignments.csv)
    std::filesystem::path embeddings;  // embedding file; optional per method
    std::filesystem::path result;      // eval: previously written result CSV
    std::filesystem::path manifest;    // eval: manifest written by dilute
    std::filesystem::path output;      // dilute: directory; rank/eval: file
    std::string method;
    std::size_t k = 0;  // expected pool size; 0 skips the check
    std::size_t l = 10;
    Hyper hyper;
    double delta = 0.4;
    std::uint64_t seed = 0;
    int threads = 1;
};

/** Builds the dilution benchmark pool and writes tables + alignments + manifest. */
void cmd_dilute(const RunConfig& cfg);

/** Runs one ranking method over a pool and writes the result CSV. */
void cmd_rank(const RunConfig& cfg);

/** Scores a result CSV against its manifest and writes the metric report. */
void cmd_eval(const RunConfig& cfg);

/** Writes hashed-token fixture embeddings for a query and lake. */
void cmd_embed(const RunConfig& cfg);

/** Exit codes: 0 ok, 2 validation, 3 I/O, 4 configuration. */
int run_cli(int argc, const char* const* argv);

}  // namespace nts
