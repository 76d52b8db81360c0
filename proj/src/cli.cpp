#include "nts/cli.hpp"

#include <algorithm>
#include <iostream>
#include <map>
#include <system_error>
#include <vector>

#include <CLI11.hpp>

#include "nts/benchmark.hpp"
#include "nts/errors.hpp"
#include "nts/io.hpp"
#include "nts/metrics.hpp"
#include "nts/novelty.hpp"

namespace nts {

namespace {

const std::vector<std::string> kMethods = {"ants",    "gmc", "gmm",          "semnov",
                                           "exact",   "er",  "sem-baseline"};

bool needs_embeddings(const std::string& method) {
    return method == "ants" || method == "gmc" || method == "semnov" ||
           method == "sem-baseline";
}

std::filesystem::path resolve_alignments(const RunConfig& cfg) {
    if (!cfg.alignments.empty()) return cfg.alignments;
    if (cfg.lake.empty())
        throw ConfigError("--alignments is required when --lake is not given");
    return cfg.lake / "alignments.csv";
}

/** Alignments targeting this query, one per candidate, sorted by candidate id. */
std::vector<Alignment> alignments_for_query(const RunConfig& cfg, const Table& query) {
    auto all = read_alignments(resolve_alignments(cfg));
    std::vector<Alignment> mine;
    for (auto& a : all)
        if (a.query_table_id == query.table_id) mine.push_back(std::move(a));
    if (mine.empty())
        throw ValidationError("no alignments for query '" + query.table_id + "'");
    std::sort(mine.begin(), mine.end(), [](const Alignment& a, const Alignment& b) {
        return a.candidate_table_id < b.candidate_table_id;
    });
    return mine;
}

struct LoadedPool {
    std::vector<Table> tables;        // same order as alignments
    std::vector<Alignment> alignments;
    std::vector<PoolEntry> entries;   // pointers into the two vectors above
};

LoadedPool load_pool(const RunConfig& cfg, const Table& query) {
    LoadedPool pool;
    pool.alignments = alignments_for_query(cfg, query);
    const FileCatalog catalog(cfg.lake);
    pool.tables.reserve(pool.alignments.size());
    for (const auto& a : pool.alignments) pool.tables.push_back(catalog.load(a.candidate_table_id));
    pool.entries.reserve(pool.tables.size());
    for (std::size_t i = 0; i < pool.tables.size(); ++i)
        pool.entries.push_back(PoolEntry{&pool.tables[i], &pool.alignments[i]});
    return pool;
}

RankedResult dispatch(const std::string& method, const RankRequest& req) {
    if (method == "ants") return ants_rank(req);
    if (method == "gmc") return gmc_select(req);
    if (method == "gmm") return gmm_select(req);
    if (method == "semnov") return semnov_rank(req);
    if (method == "er") return er_rank(req);
    if (method == "sem-baseline") return sem_baseline_rank(req);
    if (method == "exact") {
        const ExactSelection best =
            exact_nts(*req.query, req.pool, req.result_count, req.threads);
        RankedResult out{"exact", false, {}};
        out.entries.reserve(best.table_ids.size());
        for (const auto& id : best.table_ids)
            out.entries.push_back(RankedEntry{id, best.score});
        return out;
    }
    throw ConfigError("unknown method '" + method + "'");
}

}  // namespace

void cmd_dilute(const RunConfig& cfg) {
    const Table query = read_table(cfg.query);
    const LoadedPool unionables = load_pool(cfg, query);
    const Benchmark bench = build_benchmark(query, unionables.entries, cfg.delta, cfg.seed);

    std::error_code ec;
    std::filesystem::create_directories(cfg.output, ec);
    if (ec)
        throw IoError("cannot create '" + cfg.output.string() + "': " + ec.message());
    for (const auto& t : bench.pool) write_table(t, cfg.output / (t.table_id + ".csv"));
    write_alignments(bench.alignments, cfg.output / "alignments.csv");
    write_manifest(bench.manifest, cfg.output / "manifest.json");
}

void cmd_rank(const RunConfig& cfg) {
    const Table query = read_table(cfg.query);
    const LoadedPool pool = load_pool(cfg, query);
    if (cfg.k != 0 && pool.entries.size() != cfg.k)
        throw ValidationError("pool has " + std::to_string(pool.entries.size()) +
                              " candidates, expected " + std::to_string(cfg.k));

    EmbeddingStore store;
    bool have_store = false;
    if (!cfg.embeddings.empty()) {
        store = read_embeddings(cfg.embeddings);
        have_store = true;
    } else if (needs_embeddings(cfg.method)) {
        throw ConfigError("method '" + cfg.method + "' needs --embeddings");
    }

    RankRequest req;
    req.query = &query;
    req.pool = pool.entries;
    req.result_count = cfg.l;
    req.hyper = cfg.hyper;
    req.embeddings = have_store ? &store : nullptr;
    req.threads = cfg.threads;

    write_result(dispatch(cfg.method, req), query.table_id, cfg.output);
}

void cmd_eval(const RunConfig& cfg) {
    const ResultFile rf = read_result(cfg.result);
    const BenchmarkManifest manifest = read_manifest(cfg.manifest);
    const EvalPool pool = eval_pool_from_manifest(manifest);
    if (rf.query_id != manifest.query_id)
        throw ValidationError("result is for query '" + rf.query_id +
                              "' but the manifest describes '" + manifest.query_id + "'");

    RankedResult result;
    result.method = rf.method;
    result.ranked = method_is_ranked(rf.method);
    result.entries = rf.entries;

    std::vector<MetricRow> rows;
    auto add = [&](const std::string& name, double value) {
        rows.push_back(MetricRow{rf.method, rf.query_id, rf.l, name, value});
    };
    add("blatant_duplicate", static_cast<double>(blatant_duplicate(result, pool)));
    if (result.ranked) add("snm", snm(result, pool));
    add("ssnm", ssnm(result, pool));

    if (!cfg.embeddings.empty()) {
        if (cfg.query.empty() || cfg.lake.empty())
            throw ConfigError("computing f_value needs --query and --lake too");
        const Table query = read_table(cfg.query);
        if (query.table_id != rf.query_id)
            throw ValidationError("result is for query '" + rf.query_id +
                                  "' but --query names '" + query.table_id + "'");
        auto aligned = alignments_for_query(cfg, query);
        std::map<std::string, const Alignment*> by_candidate;
        for (const auto& a : aligned) by_candidate.emplace(a.candidate_table_id, &a);

        // The objective only touches the selected tables, so the request pool
        // is just those.
        const FileCatalog catalog(cfg.lake);
        std::vector<Table> tables;
        std::vector<Alignment> alignments;
        std::vector<std::string> selected;
        tables.reserve(rf.entries.size());
        alignments.reserve(rf.entries.size());
        for (const auto& e : rf.entries) {
            const auto it = by_candidate.find(e.table_id);
            if (it == by_candidate.end())
                throw ValidationError("no alignment for selected table '" + e.table_id +
                                      "'");
            tables.push_back(catalog.load(e.table_id));
            alignments.push_back(*it->second);
            selected.push_back(e.table_id);
        }
        const EmbeddingStore store = read_embeddings(cfg.embeddings);
        std::vector<PoolEntry> entries;
        entries.reserve(tables.size());
        for (std::size_t i = 0; i < tables.size(); ++i)
            entries.push_back(PoolEntry{&tables[i], &alignments[i]});

        RankRequest req;
        req.query = &query;
        req.pool = entries;
        req.result_count = rf.l;
        req.hyper = cfg.hyper;
        req.embeddings = &store;
        req.threads = cfg.threads;
        add("f_value", f_value(req, selected));
    }

    write_report(rows, cfg.output);
}

void cmd_embed(const RunConfig& cfg) {
    if (cfg.query.empty() && cfg.lake.empty())
        throw ConfigError("embed needs --query, --lake or both");
    std::vector<Table> tables;
    if (!cfg.query.empty()) tables.push_back(read_table(cfg.query));
    if (!cfg.lake.empty()) {
        const FileCatalog catalog(cfg.lake);
        for (const auto& id : catalog.table_ids()) {
            if (id == "alignments") continue;  // the pool's alignment file, not a table
            tables.push_back(catalog.load(id));
        }
    }
    write_embeddings(hashed_token_embeddings(tables), cfg.output);
}

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"novelty-aware search over unionable tables"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string query, lake, alignments, embeddings, result, manifest, output;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--alignments", alignments,
                        "alignment CSV (default: <lake>/alignments.csv)");
        sub->add_option("--threads", cfg.threads, "worker threads");
    };
    auto add_hyper = [&](CLI::App* sub) {
        sub->add_option("--domain-threshold", cfg.hyper.domain_threshold,
                        "domain size above which syntactic similarity uses sets");
        sub->add_option("--novelty-exponent", cfg.hyper.novelty_exponent,
                        "exponent applied to (1 - syntactic similarity)");
        sub->add_option("--lambda", cfg.hyper.lambda, "relevance/diversity trade-off");
        sub->add_option("--lev-threshold", cfg.hyper.lev_threshold,
                        "match threshold for normalized edit similarity");
    };

    CLI::App* dilute = app.add_subcommand(
        "dilute", "build a dilution benchmark pool from a query and its unionables");
    dilute->add_option("--query", query, "query table CSV")->required();
    dilute->add_option("--lake", lake, "directory of candidate CSVs")->required();
    dilute->add_option("--output", output, "directory for the pool")->required();
    dilute->add_option("--delta", cfg.delta, "fraction of query rows to mix in");
    dilute->add_option("--seed", cfg.seed, "generator seed");
    add_common(dilute);

    CLI::App* rank = app.add_subcommand("rank", "run one ranking method over a pool");
    rank->add_option("--query", query, "query table CSV")->required();
    rank->add_option("--lake", lake, "directory of candidate CSVs")->required();
    rank->add_option("--method", cfg.method, "ranking method")
        ->required()
        ->check(CLI::IsMember(kMethods));
    rank->add_option("--embeddings", embeddings, "embedding vectors file");
    rank->add_option("--output", output, "result CSV path")->required();
    rank->add_option("-l,--result-count", cfg.l, "how many tables to return");
    rank->add_option("-k,--expect-pool", cfg.k,
                     "fail unless the pool has exactly this many candidates");
    add_common(rank);
    add_hyper(rank);

    CLI::App* eval = app.add_subcommand("eval", "score a result file against a manifest");
    eval->add_option("--result", result, "result CSV from rank")->required();
    eval->add_option("--manifest", manifest, "manifest JSON from dilute")->required();
    eval->add_option("--output", output, "metric report CSV path")->required();
    eval->add_option("--query", query, "query table CSV (for the trade-off objective)");
    eval->add_option("--lake", lake, "directory of candidate CSVs (ditto)");
    eval->add_option("--embeddings", embeddings,
                     "embedding vectors; enables the trade-off objective");
    add_common(eval);
    add_hyper(eval);

    CLI::App* embed =
        app.add_subcommand("embed", "write hashed-token fixture embeddings");
    embed->add_option("--query", query, "query table CSV");
    embed->add_option("--lake", lake, "directory of candidate CSVs");
    embed->add_option("--output", output, "embedding file path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 4;
    }

    cfg.query = query;
    cfg.lake = lake;
    cfg.alignments = alignments;
    cfg.embeddings = embeddings;
    cfg.result = result;
    cfg.manifest = manifest;
    cfg.output = output;

    try {
        if (dilute->parsed()) cmd_dilute(cfg);
        if (rank->parsed()) cmd_rank(cfg);
        if (eval->parsed()) cmd_eval(cfg);
        if (embed->parsed()) cmd_embed(cfg);
        return 0;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace nts
