#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace nts {

/** A cell is either Null or verbatim text. Equality is raw string equality. */
using Value = std::optional<std::string>;

struct Tuple {
    std::int64_t id = 0;        // unique within its table
    std::vector<Value> values;  // parallel to the table schema
};

/**
 * A relation with multiset semantics: duplicate rows are kept, order is the
 * ingestion order. Attribute names are unique and non-empty.
 */
struct Table {
    std::string table_id;
    std::vector<std::string> schema;
    std::vector<Tuple> tuples;

    std::size_t attr_index(const std::string& name) const;  // throws ValidationError
    bool has_attr(const std::string& name) const;
};

/** Builds a table from rows, minting tuple ids 0..n-1. Rejects empty input. */
Table make_table(std::string table_id, std::vector<std::string> schema,
                 std::vector<std::vector<Value>> rows);

/** Schema and id checks shared by ingestion paths; does not require rows. */
void validate_table_shape(const Table& t);

struct AlignedPair {
    std::string query_attribute;
    std::string candidate_attribute;
};

/**
 * Attribute correspondence between a query table and one candidate. Pairs are
 * one-to-one on both sides and never empty.
 */
struct Alignment {
    std::string query_table_id;
    std::string candidate_table_id;
    std::vector<AlignedPair> pairs;

    /** Same correspondence with the two sides swapped. */
    Alignment reversed() const;
};

/** Checks pair uniqueness and that both endpoints name real attributes. */
void validate_alignment(const Alignment& a, const Table& query, const Table& candidate);

/**
 * Left-outer union. The result keeps left's table id and schema; rows are
 * left's rows followed by one row per right tuple, where attributes of left
 * reached by the alignment take the right tuple's values and the rest are
 * Null. Right-only attributes are dropped. No deduplication; fresh tuple ids.
 * The alignment's query side names attributes of left, the candidate side
 * attributes of right.
 */
Table left_outer_union(const Table& left, const Table& right, const Alignment& a);

/**
 * Appends a seeded uniform sample (without replacement) of ceil(delta * |q|)
 * of q's tuples to t through the alignment, which maps t's attributes (query
 * side) to q's (candidate side). The result id gets the diluted-table suffix.
 * Requires 0 < delta <= 1; identical inputs and seed give identical output.
 */
Table dilute(const Table& t, const Table& q, const Alignment& a, double delta,
             std::uint64_t seed);

/** Suffix appended by dilute() to the source table id. */
inline constexpr const char* kDilutedSuffix = "__diluted";

/** A candidate table together with its alignment to the query. */
struct PoolEntry {
    const Table* table = nullptr;
    const Alignment* alignment = nullptr;
};

}  // namespace nts
