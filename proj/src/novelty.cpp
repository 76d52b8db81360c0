#include "nts/novelty.hpp"

#include <algorithm>
#include <limits>
#include <unordered_map>

#include "nts/errors.hpp"
#include "nts/parallel.hpp"

namespace nts {

BetaProfile compute_betas(const Table& scored) {
    BetaProfile bp;
    bp.beta.resize(scored.schema.size(), 0.0);
    for (std::size_t col = 0; col < scored.schema.size(); ++col) {
        std::unordered_map<std::string, std::uint64_t> counts;
        std::uint64_t filled = 0;
        for (const auto& t : scored.tuples) {
            const Value& v = t.values[col];
            if (!v.has_value()) continue;
            ++counts[*v];
            ++filled;
        }
        const std::uint64_t total = filled * (filled - 1) / 2;
        if (total == 0) continue;  // fewer than two non-null values
        std::uint64_t matching = 0;
        for (const auto& [_, c] : counts) matching += c * (c - 1) / 2;
        bp.beta[col] =
            static_cast<double>(total - matching) / static_cast<double>(total);
    }
    return bp;
}

double tuple_pair_nscore(const Tuple& a, const Tuple& b, const BetaProfile& betas) {
    if (a.values.size() != betas.beta.size() || b.values.size() != betas.beta.size())
        throw ValidationError("tuple width does not match the beta profile");
    double sum = 0.0;
    for (std::size_t i = 0; i < betas.beta.size(); ++i) {
        const Value& x = a.values[i];
        const Value& y = b.values[i];
        const bool xn = !x.has_value();
        const bool yn = !y.has_value();
        if (xn && yn) continue;
        if (xn != yn)
            sum += betas.beta[i];
        else if (*x != *y)
            sum += 1.0;
    }
    return sum / static_cast<double>(betas.beta.size());
}

double tuple_novelty(const Table& scored, std::size_t row, const BetaProfile& betas) {
    if (row >= scored.tuples.size())
        throw ValidationError("tuple_novelty row out of range");
    if (scored.tuples.size() < 2)
        throw ValidationError("tuple_novelty requires at least two tuples");
    const Tuple& self = scored.tuples[row];
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < scored.tuples.size(); ++j) {
        const Tuple& other = scored.tuples[j];
        if (other.id == self.id) continue;
        best = std::min(best, tuple_pair_nscore(self, other, betas));
    }
    return best;
}

double table_nscore(const Table& scored, int threads) {
    const std::size_t y = scored.tuples.size();
    if (y < 2) throw ValidationError("table_nscore requires at least two tuples");
    validate_table_shape(scored);  // widths and id uniqueness, before any worker runs
    const BetaProfile betas = compute_betas(scored);
    std::vector<double> novelty(y);
    parallel_for(y, threads,
                 [&](std::size_t i) { novelty[i] = tuple_novelty(scored, i, betas); });
    double sum = 0.0;
    for (double v : novelty) sum += v;
    return sum / static_cast<double>(y);
}

Table build_result_table(const Table& q, std::span<const PoolEntry> pool) {
    if (q.tuples.empty())
        throw ValidationError("non-empty table required: '" + q.table_id + "'");
    Table shell;  // the query's schema with no rows, the projection target
    shell.table_id = q.table_id;
    shell.schema = q.schema;

    Table out;
    out.table_id = q.table_id + "__result";
    out.schema = q.schema;
    std::int64_t id = 0;
    for (const auto& t : q.tuples) out.tuples.push_back(Tuple{id++, t.values});
    for (const auto& entry : pool) {
        if (entry.table == nullptr || entry.alignment == nullptr)
            throw ValidationError("pool entry without table or alignment");
        Table projected = left_outer_union(shell, *entry.table, *entry.alignment);
        for (auto& t : projected.tuples) {
            t.id = id++;
            out.tuples.push_back(std::move(t));
        }
    }
    return out;
}

double search_nscore(const Table& q, std::span<const PoolEntry> pool, int threads) {
    return table_nscore(build_result_table(q, pool), threads);
}

namespace {

// All size-l index subsets of [0, k), in lexicographic order.
std::vector<std::vector<std::size_t>> combinations(std::size_t k, std::size_t l) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur(l);
    for (std::size_t i = 0; i < l; ++i) cur[i] = i;
    while (true) {
        out.push_back(cur);
        std::size_t i = l;
        while (i > 0) {
            --i;
            if (cur[i] != i + k - l) break;
            if (i == 0) return out;
        }
        ++cur[i];
        for (std::size_t j = i + 1; j < l; ++j) cur[j] = cur[j - 1] + 1;
    }
}

}  // namespace

ExactSelection exact_nts(const Table& q, std::span<const PoolEntry> pool, std::size_t l,
                         int threads) {
    const std::size_t k = pool.size();
    if (l == 0) throw ValidationError("result size must be at least 1");
    if (l > k)
        throw ValidationError("result size " + std::to_string(l) +
                              " exceeds pool size " + std::to_string(k));
    // C(k, l) subsets, each scored in full: keep it at desk scale.
    double subsets = 1.0;
    for (std::size_t i = 0; i < l; ++i)
        subsets = subsets * static_cast<double>(k - i) / static_cast<double>(i + 1);
    if (k > 20 || subsets > 200000.0)
        throw ConfigError("exact search is limited to small pools (got " +
                          std::to_string(k) + " choose " + std::to_string(l) + ")");
    for (const auto& entry : pool) {
        if (entry.table == nullptr || entry.alignment == nullptr)
            throw ValidationError("pool entry without table or alignment");
        validate_alignment(*entry.alignment, q, *entry.table);
    }

    const auto combos = combinations(k, l);
    std::vector<double> scores(combos.size());
    parallel_for(combos.size(), threads, [&](std::size_t ci) {
        std::vector<PoolEntry> subset;
        subset.reserve(l);
        for (std::size_t idx : combos[ci]) subset.push_back(pool[idx]);
        scores[ci] = search_nscore(q, subset, 1);
    });

    auto ids_of = [&](const std::vector<std::size_t>& combo) {
        std::vector<std::string> ids;
        ids.reserve(combo.size());
        for (std::size_t idx : combo) ids.push_back(pool[idx].table->table_id);
        std::sort(ids.begin(), ids.end());
        return ids;
    };

    std::size_t best = 0;
    std::vector<std::string> best_ids = ids_of(combos[0]);
    for (std::size_t ci = 1; ci < combos.size(); ++ci) {
        if (scores[ci] < scores[best]) continue;
        if (scores[ci] > scores[best]) {
            best = ci;
            best_ids = ids_of(combos[ci]);
            continue;
        }
        auto ids = ids_of(combos[ci]);
        if (ids < best_ids) {
            best = ci;
            best_ids = std::move(ids);
        }
    }
    return ExactSelection{std::move(best_ids), scores[best]};
}

}  // namespace nts
