#include "nts/table.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include "nts/errors.hpp"

namespace nts {

namespace {

// Deterministic PRNG (SplitMix64). Sampling must not depend on the standard
// library's distribution internals, which differ across implementations.
struct SplitMix64 {
    std::uint64_t state;

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n) via rejection.
    std::uint64_t bounded(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = next();
        } while (x >= limit);
        return x % n;
    }
};

}  // namespace

std::size_t Table::attr_index(const std::string& name) const {
    for (std::size_t i = 0; i < schema.size(); ++i)
        if (schema[i] == name) return i;
    throw ValidationError("table '" + table_id + "' has no attribute '" + name + "'");
}

bool Table::has_attr(const std::string& name) const {
    return std::find(schema.begin(), schema.end(), name) != schema.end();
}

void validate_table_shape(const Table& t) {
    if (t.table_id.empty()) throw ValidationError("table id must be non-empty");
    if (t.schema.empty())
        throw ValidationError("table '" + t.table_id + "' has an empty schema");
    std::unordered_set<std::string> seen;
    for (const auto& a : t.schema) {
        if (a.empty())
            throw ValidationError("table '" + t.table_id + "' has an unnamed attribute");
        if (!seen.insert(a).second)
            throw ValidationError("table '" + t.table_id + "' repeats attribute '" + a + "'");
    }
    std::unordered_set<std::int64_t> ids;
    for (const auto& tup : t.tuples) {
        if (tup.values.size() != t.schema.size())
            throw ValidationError("table '" + t.table_id + "' has a tuple of width " +
                                  std::to_string(tup.values.size()) + ", schema width is " +
                                  std::to_string(t.schema.size()));
        if (!ids.insert(tup.id).second)
            throw ValidationError("table '" + t.table_id + "' repeats tuple id " +
                                  std::to_string(tup.id));
    }
}

Table make_table(std::string table_id, std::vector<std::string> schema,
                 std::vector<std::vector<Value>> rows) {
    if (rows.empty())
        throw ValidationError("non-empty table required for '" + table_id + "'");
    Table t;
    t.table_id = std::move(table_id);
    t.schema = std::move(schema);
    t.tuples.reserve(rows.size());
    std::int64_t id = 0;
    for (auto& r : rows) t.tuples.push_back(Tuple{id++, std::move(r)});
    validate_table_shape(t);
    return t;
}

Alignment Alignment::reversed() const {
    Alignment r;
    r.query_table_id = candidate_table_id;
    r.candidate_table_id = query_table_id;
    r.pairs.reserve(pairs.size());
    for (const auto& p : pairs)
        r.pairs.push_back(AlignedPair{p.candidate_attribute, p.query_attribute});
    return r;
}

void validate_alignment(const Alignment& a, const Table& query, const Table& candidate) {
    if (a.pairs.empty())
        throw ValidationError("alignment " + a.query_table_id + " -> " +
                              a.candidate_table_id + " has no pairs");
    if (a.query_table_id != query.table_id)
        throw ValidationError("alignment names query '" + a.query_table_id +
                              "' but was applied to '" + query.table_id + "'");
    if (a.candidate_table_id != candidate.table_id)
        throw ValidationError("alignment names candidate '" + a.candidate_table_id +
                              "' but was applied to '" + candidate.table_id + "'");
    std::unordered_set<std::string> qs, cs;
    for (const auto& p : a.pairs) {
        if (!query.has_attr(p.query_attribute))
            throw ValidationError("alignment " + a.query_table_id + " -> " +
                                  a.candidate_table_id + " references missing attribute '" +
                                  p.query_attribute + "' of '" + query.table_id + "'");
        if (!candidate.has_attr(p.candidate_attribute))
            throw ValidationError("alignment " + a.query_table_id + " -> " +
                                  a.candidate_table_id + " references missing attribute '" +
                                  p.candidate_attribute + "' of '" + candidate.table_id + "'");
        if (!qs.insert(p.query_attribute).second)
            throw ValidationError("alignment " + a.query_table_id + " -> " +
                                  a.candidate_table_id + " maps attribute '" +
                                  p.query_attribute + "' twice");
        if (!cs.insert(p.candidate_attribute).second)
            throw ValidationError("alignment " + a.query_table_id + " -> " +
                                  a.candidate_table_id + " maps attribute '" +
                                  p.candidate_attribute + "' twice");
    }
}

Table left_outer_union(const Table& left, const Table& right, const Alignment& a) {
    validate_alignment(a, left, right);
    if (right.tuples.empty())
        throw ValidationError("non-empty table required: '" + right.table_id + "'");

    // position in left's schema -> position in right's schema, -1 when unaligned
    std::vector<std::ptrdiff_t> from_right(left.schema.size(), -1);
    for (const auto& p : a.pairs)
        from_right[left.attr_index(p.query_attribute)] =
            static_cast<std::ptrdiff_t>(right.attr_index(p.candidate_attribute));

    Table out;
    out.table_id = left.table_id;
    out.schema = left.schema;
    out.tuples.reserve(left.tuples.size() + right.tuples.size());
    std::int64_t id = 0;
    for (const auto& t : left.tuples) out.tuples.push_back(Tuple{id++, t.values});
    for (const auto& t : right.tuples) {
        Tuple padded{id++, std::vector<Value>(left.schema.size())};
        for (std::size_t i = 0; i < left.schema.size(); ++i)
            if (from_right[i] >= 0)
                padded.values[i] = t.values[static_cast<std::size_t>(from_right[i])];
        out.tuples.push_back(std::move(padded));
    }
    return out;
}

Table dilute(const Table& t, const Table& q, const Alignment& a, double delta,
             std::uint64_t seed) {
    if (!(delta > 0.0) || delta > 1.0)
        throw ValidationError("delta must be in (0, 1], got " + std::to_string(delta));
    if (q.tuples.empty())
        throw ValidationError("non-empty table required: '" + q.table_id + "'");

    const std::size_t n = q.tuples.size();
    const auto m = static_cast<std::size_t>(
        std::ceil(delta * static_cast<double>(n)));

    // Partial Fisher-Yates over tuple positions, then ascending order so the
    // sample follows q's stable tuple ordering.
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    SplitMix64 rng{seed};
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.bounded(n - i));
        std::swap(idx[i], idx[j]);
    }
    idx.resize(m);
    std::sort(idx.begin(), idx.end());

    Table sample;
    sample.table_id = q.table_id;
    sample.schema = q.schema;
    std::int64_t id = 0;
    for (std::size_t i : idx) sample.tuples.push_back(Tuple{id++, q.tuples[i].values});

    Table out = left_outer_union(t, sample, a);
    out.table_id = t.table_id + kDilutedSuffix;
    return out;
}

}  // namespace nts
