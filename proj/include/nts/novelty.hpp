#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "nts/table.hpp"

namespace nts {

/**
 * Per-attribute weight for comparisons where exactly one side is Null.
 * beta[i] is the fraction of non-matching unordered pairs among attribute
 * i's non-null values in the scored table; attributes with fewer than two
 * non-null values get 0.
 */
struct BetaProfile {
    std::vector<double> beta;
};

BetaProfile compute_betas(const Table& scored);

/**
 * Mean per-attribute novelty of two tuples: 1 where both sides are non-null
 * and differ, beta[i] where exactly one side is Null, 0 where they are equal
 * (including both Null).
 */
double tuple_pair_nscore(const Tuple& a, const Tuple& b, const BetaProfile& betas);

/** Minimum pair score between tuples[row] and every other tuple (by id). */
double tuple_novelty(const Table& scored, std::size_t row, const BetaProfile& betas);

/** Mean tuple novelty over the whole table. Requires at least two tuples. */
double table_nscore(const Table& scored, int threads = 1);

/**
 * The combined result relation: the query's rows followed by every pool
 * table's rows projected onto the query schema (Null-padded) in pool order.
 */
Table build_result_table(const Table& q, std::span<const PoolEntry> pool);

/** table_nscore of the combined result relation. */
double search_nscore(const Table& q, std::span<const PoolEntry> pool, int threads = 1);

struct ExactSelection {
    std::vector<std::string> table_ids;  // sorted ascending
    double score = 0.0;
};

/**
 * Brute-force optimum: scores every size-l subset of the pool and returns
 * the best one. Ties go to the lexicographically smallest sorted id
 * sequence. Intended for small pools; refuses runs beyond desk scale.
 */
ExactSelection exact_nts(const Table& q, std::span<const PoolEntry> pool, std::size_t l,
                         int threads = 1);

}  // namespace nts
