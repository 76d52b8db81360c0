#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "nts/metrics.hpp"
#include "nts/table.hpp"

namespace nts {

/** Provenance tags used in manifests. */
inline constexpr const char* kProvenanceOriginal = "original";
inline constexpr const char* kProvenanceDiluted = "diluted";
inline constexpr const char* kProvenanceQueryCopy = "query_copy";
inline constexpr const char* kProvenanceDilutedQuery = "diluted_query";

inline constexpr const char* kQueryCopySuffix = "__copy";

struct BenchmarkManifest {
    std::string query_id;
    double delta = 0.0;
    std::uint64_t seed = 0;
    std::size_t pool_size = 0;  // k
    std::string query_copy_id;
    std::string diluted_query_id;
    std::map<std::string, std::string> provenance;   // table id -> kind
    std::map<std::string, std::string> diluted_of;   // original id -> diluted id
};

struct Benchmark {
    std::vector<Table> pool;            // sorted by table id
    std::vector<Alignment> alignments;  // query -> each pool table, same order
    BenchmarkManifest manifest;
};

/**
 * Builds the dilution benchmark for one query: every unionable table plus
 * its diluted version, a renamed value-identical copy of the query, and the
 * copy's diluted version. Pool size is 2 * |unionables| + 2. Alignments for
 * derived tables are inherited; the copy gets the identity alignment.
 * Deterministic for fixed inputs and seed.
 */
Benchmark build_benchmark(const Table& query, std::span<const PoolEntry> unionables,
                          double delta, std::uint64_t seed);

/** The metric bookkeeping view of a manifest. */
EvalPool eval_pool_from_manifest(const BenchmarkManifest& m);

}  // namespace nts
