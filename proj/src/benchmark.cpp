#include "nts/benchmark.hpp"

#include <algorithm>
#include <set>

#include "nts/errors.hpp"

namespace nts {

namespace {

std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

// Every dilution gets its own stream, derived from the run seed and the
// table it applies to, so adding a table never reshuffles the others.
std::uint64_t derive_seed(std::uint64_t run_seed, const std::string& table_id) {
    return run_seed ^ fnv1a64(table_id);
}

}  // namespace

Benchmark build_benchmark(const Table& query, std::span<const PoolEntry> unionables,
                          double delta, std::uint64_t seed) {
    if (query.tuples.empty())
        throw ValidationError("non-empty table required: '" + query.table_id + "'");
    if (!(delta > 0.0) || delta > 1.0)
        throw ValidationError("delta must be in (0, 1], got " + std::to_string(delta));
    if (unionables.empty())
        throw ValidationError("benchmark generation needs at least one unionable table");

    Benchmark bench;
    auto& manifest = bench.manifest;
    manifest.query_id = query.table_id;
    manifest.delta = delta;
    manifest.seed = seed;
    manifest.query_copy_id = query.table_id + kQueryCopySuffix;
    manifest.diluted_query_id = manifest.query_copy_id + kDilutedSuffix;

    std::set<std::string> ids;
    auto claim = [&ids](const std::string& id) {
        if (!ids.insert(id).second)
            throw ValidationError("benchmark pool would repeat table id '" + id + "'");
    };

    auto add = [&](Table t, Alignment a, const char* provenance) {
        claim(t.table_id);
        manifest.provenance.emplace(t.table_id, provenance);
        bench.pool.push_back(std::move(t));
        bench.alignments.push_back(std::move(a));
    };

    for (const auto& entry : unionables) {
        if (entry.table == nullptr || entry.alignment == nullptr)
            throw ValidationError("pool entry without table or alignment");
        const Table& t = *entry.table;
        const Alignment& a = *entry.alignment;
        validate_alignment(a, query, t);
        if (t.table_id == query.table_id)
            throw ValidationError("the query table cannot appear among the unionables");
        if (t.tuples.empty())
            throw ValidationError("non-empty table required: '" + t.table_id + "'");

        Table diluted = dilute(t, query, a.reversed(), delta,
                               derive_seed(seed, t.table_id));
        Alignment diluted_align = a;
        diluted_align.candidate_table_id = diluted.table_id;

        manifest.diluted_of.emplace(t.table_id, diluted.table_id);
        add(t, a, kProvenanceOriginal);
        add(std::move(diluted), std::move(diluted_align), kProvenanceDiluted);
    }

    Table copy = query;
    copy.table_id = manifest.query_copy_id;
    Alignment copy_align;
    copy_align.query_table_id = query.table_id;
    copy_align.candidate_table_id = copy.table_id;
    for (const auto& attr : query.schema)
        copy_align.pairs.push_back(AlignedPair{attr, attr});

    Table diluted_copy = dilute(copy, query, copy_align.reversed(), delta,
                                derive_seed(seed, copy.table_id));
    Alignment diluted_copy_align = copy_align;
    diluted_copy_align.candidate_table_id = diluted_copy.table_id;

    manifest.diluted_of.emplace(copy.table_id, diluted_copy.table_id);
    add(std::move(copy), std::move(copy_align), kProvenanceQueryCopy);
    add(std::move(diluted_copy), std::move(diluted_copy_align), kProvenanceDilutedQuery);

    manifest.pool_size = bench.pool.size();

    // canonical order: ascending table id
    std::vector<std::size_t> order(bench.pool.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return bench.pool[a].table_id < bench.pool[b].table_id;
    });
    std::vector<Table> pool;
    std::vector<Alignment> aligns;
    pool.reserve(order.size());
    aligns.reserve(order.size());
    for (std::size_t i : order) {
        pool.push_back(std::move(bench.pool[i]));
        aligns.push_back(std::move(bench.alignments[i]));
    }
    bench.pool = std::move(pool);
    bench.alignments = std::move(aligns);
    return bench;
}

EvalPool eval_pool_from_manifest(const BenchmarkManifest& m) {
    EvalPool pool;
    pool.query_id = m.query_id;
    pool.query_copy_id = m.query_copy_id;
    pool.diluted_query_id = m.diluted_query_id;
    pool.diluted_of = m.diluted_of;
    pool.originals.reserve(m.diluted_of.size());
    for (const auto& [orig, _] : m.diluted_of) pool.originals.push_back(orig);
    return pool;
}

}  // namespace nts
