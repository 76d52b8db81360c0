#include "nts/rankers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <set>

#include "nts/errors.hpp"
#include "nts/parallel.hpp"

namespace nts {

namespace {

void validate_hyper(const Hyper& h) {
    if (h.domain_threshold == 0)
        throw ConfigError("domain threshold must be at least 1");
    if (h.lambda < 0.0 || h.lambda > 1.0)
        throw ConfigError("lambda must be in [0, 1], got " + std::to_string(h.lambda));
    if (h.lev_threshold < 0.0 || h.lev_threshold > 1.0)
        throw ConfigError("lev threshold must be in [0, 1], got " +
                          std::to_string(h.lev_threshold));
    if (!(h.novelty_exponent >= 0.0))
        throw ConfigError("novelty exponent must be non-negative");
}

// Everything a scoring pass needs, resolved and validated upfront so the
// parallel sections cannot throw.
struct PoolProfile {
    struct ResolvedPair {
        std::size_t q_attr;        // index into the query schema
        std::string q_name;
        std::string c_name;
    };

    const Table* query = nullptr;
    std::vector<const Table*> tables;
    std::vector<std::string> ids;
    std::vector<std::vector<ResolvedPair>> pairs;  // alignment order per candidate
    std::vector<NormalizedDomain> query_domains;   // per query attribute (aligned only)
    std::vector<std::map<std::size_t, NormalizedDomain>> cand_domains;
    int threads = 1;

    std::size_t size() const { return tables.size(); }
};

PoolProfile build_profile(const RankRequest& req, bool build_domains) {
    if (req.query == nullptr) throw ValidationError("rank request without a query table");
    if (req.pool.empty()) throw ValidationError("rank request with an empty pool");
    if (req.result_count == 0) throw ValidationError("result size must be at least 1");
    if (req.result_count > req.pool.size())
        throw ValidationError("result size " + std::to_string(req.result_count) +
                              " exceeds pool size " + std::to_string(req.pool.size()));
    validate_hyper(req.hyper);

    PoolProfile pp;
    pp.query = req.query;
    pp.threads = req.threads < 1 ? 1 : req.threads;
    std::set<std::string> seen;
    for (const auto& entry : req.pool) {
        if (entry.table == nullptr || entry.alignment == nullptr)
            throw ValidationError("pool entry without table or alignment");
        validate_alignment(*entry.alignment, *req.query, *entry.table);
        if (!seen.insert(entry.table->table_id).second)
            throw ValidationError("pool repeats table id '" + entry.table->table_id + "'");
        pp.tables.push_back(entry.table);
        pp.ids.push_back(entry.table->table_id);
        std::vector<PoolProfile::ResolvedPair> rp;
        rp.reserve(entry.alignment->pairs.size());
        for (const auto& p : entry.alignment->pairs)
            rp.push_back({req.query->attr_index(p.query_attribute), p.query_attribute,
                          p.candidate_attribute});
        pp.pairs.push_back(std::move(rp));
    }

    if (build_domains) {
        pp.query_domains.resize(req.query->schema.size());
        std::vector<bool> wanted(req.query->schema.size(), false);
        for (const auto& rp : pp.pairs)
            for (const auto& p : rp) wanted[p.q_attr] = true;
        for (std::size_t i = 0; i < wanted.size(); ++i)
            if (wanted[i]) pp.query_domains[i] = extract_domain(*req.query, req.query->schema[i]);

        pp.cand_domains.resize(pp.size());
        parallel_for(pp.size(), pp.threads, [&](std::size_t c) {
            for (const auto& p : pp.pairs[c])
                pp.cand_domains[c].emplace(p.q_attr,
                                           extract_domain(*pp.tables[c], p.c_name));
        });
    }
    return pp;
}

void require_embeddings(const RankRequest& req, const std::string& method) {
    if (req.embeddings == nullptr)
        throw ConfigError("method '" + method + "' requires embeddings");
}

// Forces a clear lookup error now rather than a crash inside a worker.
void check_attribute_keys(const PoolProfile& pp, const EmbeddingStore& store) {
    for (std::size_t c = 0; c < pp.size(); ++c)
        for (const auto& p : pp.pairs[c]) {
            store.attribute_vector(pp.query->table_id, p.q_name);
            store.attribute_vector(pp.ids[c], p.c_name);
        }
}

void check_table_keys(const PoolProfile& pp, const EmbeddingStore& store) {
    store.table_vector(pp.query->table_id);
    for (const auto& id : pp.ids) store.table_vector(id);
}

RankedResult order_by_score(std::string method, const PoolProfile& pp,
                            const std::vector<double>& scores, std::size_t l) {
    std::vector<std::size_t> order(pp.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (scores[a] != scores[b]) return scores[a] > scores[b];
        return pp.ids[a] < pp.ids[b];
    });
    RankedResult out;
    out.method = std::move(method);
    out.ranked = true;
    out.entries.reserve(l);
    for (std::size_t i = 0; i < l; ++i)
        out.entries.push_back(RankedEntry{pp.ids[order[i]], scores[order[i]]});
    return out;
}

double pair_syn_sim(const PoolProfile& pp, std::size_t c,
                    const PoolProfile::ResolvedPair& p, std::size_t threshold) {
    return syn_sim(pp.query_domains[p.q_attr], pp.cand_domains[c].at(p.q_attr), threshold);
}

// Mean (1 - syn_sim) over query attributes aligned in both candidates, the
// pairwise diversity used by the greedy selectors; 1 without a shared anchor.
double profile_tablediv(const PoolProfile& pp, std::size_t a, std::size_t b,
                        std::size_t threshold) {
    const auto& da = pp.cand_domains[a];
    const auto& db = pp.cand_domains[b];
    double sum = 0.0;
    std::size_t count = 0;
    for (const auto& [q_attr, dom_a] : da) {  // std::map: ascending query attribute
        auto it = db.find(q_attr);
        if (it == db.end()) continue;
        sum += 1.0 - syn_sim(dom_a, it->second, threshold);
        ++count;
    }
    if (count == 0) return 1.0;
    return sum / static_cast<double>(count);
}

double profile_tablesim(const PoolProfile& pp, std::size_t c, const EmbeddingStore& store) {
    double sum = 0.0;
    for (const auto& p : pp.pairs[c])
        sum += sem_sim(store, pp.query->table_id, p.q_name, pp.ids[c], p.c_name);
    return sum / static_cast<double>(pp.pairs[c].size());
}

std::vector<std::vector<double>> tablediv_matrix(const PoolProfile& pp,
                                                 std::size_t threshold) {
    const std::size_t k = pp.size();
    std::vector<std::vector<double>> div(k, std::vector<double>(k, 0.0));
    std::vector<std::pair<std::size_t, std::size_t>> cells;
    cells.reserve(k * (k - 1) / 2);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) cells.emplace_back(i, j);
    parallel_for(cells.size(), pp.threads, [&](std::size_t n) {
        const auto [i, j] = cells[n];
        const double d = profile_tablediv(pp, i, j, threshold);
        div[i][j] = d;
        div[j][i] = d;
    });
    return div;
}

}  // namespace

double att_novelty(double syntactic_similarity, double semantic_similarity,
                   const Hyper& hyper) {
    const double base = 1.0 - syntactic_similarity;
    const double powed = hyper.novelty_exponent == 1.0
                             ? base
                             : std::pow(base, hyper.novelty_exponent);
    return powed * semantic_similarity;
}

double table_novelty(const Table& q, const Table& candidate, const Alignment& a,
                     const Hyper& hyper, const EmbeddingStore& store) {
    validate_alignment(a, q, candidate);
    validate_hyper(hyper);
    double sum = 0.0;
    for (const auto& p : a.pairs) {
        const double syn = syn_sim(q, p.query_attribute, candidate, p.candidate_attribute,
                                   hyper.domain_threshold);
        const double sem = sem_sim(store, q.table_id, p.query_attribute,
                                   candidate.table_id, p.candidate_attribute);
        sum += att_novelty(syn, sem, hyper);
    }
    return sum;
}

RankedResult ants_rank(const RankRequest& req) {
    require_embeddings(req, "ants");
    PoolProfile pp = build_profile(req, true);
    check_attribute_keys(pp, *req.embeddings);
    std::vector<double> scores(pp.size());
    parallel_for(pp.size(), pp.threads, [&](std::size_t c) {
        double sum = 0.0;
        for (const auto& p : pp.pairs[c]) {
            const double syn = pair_syn_sim(pp, c, p, req.hyper.domain_threshold);
            const double sem = sem_sim(*req.embeddings, pp.query->table_id, p.q_name,
                                       pp.ids[c], p.c_name);
            sum += att_novelty(syn, sem, req.hyper);
        }
        scores[c] = sum;
    });
    return order_by_score("ants", pp, scores, req.result_count);
}

RankedResult sem_baseline_rank(const RankRequest& req) {
    require_embeddings(req, "sem-baseline");
    PoolProfile pp = build_profile(req, false);
    check_attribute_keys(pp, *req.embeddings);
    std::vector<double> scores(pp.size());
    parallel_for(pp.size(), pp.threads, [&](std::size_t c) {
        double sum = 0.0;
        for (const auto& p : pp.pairs[c])
            sum += sem_sim(*req.embeddings, pp.query->table_id, p.q_name, pp.ids[c],
                           p.c_name);
        scores[c] = sum;
    });
    return order_by_score("sem-baseline", pp, scores, req.result_count);
}

RankedResult semnov_rank(const RankRequest& req) {
    require_embeddings(req, "semnov");
    PoolProfile pp = build_profile(req, false);
    check_attribute_keys(pp, *req.embeddings);
    check_table_keys(pp, *req.embeddings);
    std::vector<double> scores(pp.size());
    parallel_for(pp.size(), pp.threads, [&](std::size_t c) {
        const double tsim = table_sim(*req.embeddings, pp.query->table_id, pp.ids[c]);
        const double base = 1.0 - tsim;
        const double powed = req.hyper.novelty_exponent == 1.0
                                 ? base
                                 : std::pow(base, req.hyper.novelty_exponent);
        double sum = 0.0;
        for (const auto& p : pp.pairs[c])
            sum += powed * sem_sim(*req.embeddings, pp.query->table_id, p.q_name,
                                   pp.ids[c], p.c_name);
        scores[c] = sum;
    });
    return order_by_score("semnov", pp, scores, req.result_count);
}

double levenshtein_similarity(std::string_view a, std::string_view b) {
    if (a.empty() && b.empty()) return 1.0;
    const std::size_t la = a.size(), lb = b.size();
    std::vector<std::size_t> prev(lb + 1), cur(lb + 1);
    for (std::size_t j = 0; j <= lb; ++j) prev[j] = j;
    for (std::size_t i = 1; i <= la; ++i) {
        cur[0] = i;
        for (std::size_t j = 1; j <= lb; ++j) {
            const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
        }
        std::swap(prev, cur);
    }
    const double dist = static_cast<double>(prev[lb]);
    return 1.0 - dist / static_cast<double>(std::max(la, lb));
}

RankedResult er_rank(const RankRequest& req) {
    PoolProfile pp = build_profile(req, false);
    const Table& q = *pp.query;
    std::vector<double> scores(pp.size());
    parallel_for(pp.size(), pp.threads, [&](std::size_t c) {
        const Table& cand = *pp.tables[c];
        const auto& pairs = pp.pairs[c];
        std::vector<std::size_t> c_attr(pairs.size());
        for (std::size_t p = 0; p < pairs.size(); ++p)
            c_attr[p] = cand.attr_index(pairs[p].c_name);

        // token -> query tuples holding it in an aligned attribute
        std::map<std::string, std::vector<std::size_t>> block;
        for (std::size_t qi = 0; qi < q.tuples.size(); ++qi) {
            std::set<std::string> tokens;
            for (const auto& p : pairs) {
                const Value& v = q.tuples[qi].values[p.q_attr];
                if (!v.has_value()) continue;
                for (auto& tok : normalize_tokens(*v)) tokens.insert(std::move(tok));
            }
            for (const auto& tok : tokens) block[tok].push_back(qi);
        }

        auto matches = [&](std::size_t qi, const Tuple& ct) {
            for (std::size_t p = 0; p < pairs.size(); ++p) {
                const Value& qv = q.tuples[qi].values[pairs[p].q_attr];
                const Value& cv = ct.values[c_attr[p]];
                const std::string_view qs = qv.has_value() ? *qv : std::string_view{};
                const std::string_view cs = cv.has_value() ? *cv : std::string_view{};
                if (levenshtein_similarity(qs, cs) < req.hyper.lev_threshold) return false;
            }
            return true;
        };

        std::size_t matched = 0;
        for (const auto& ct : cand.tuples) {
            std::set<std::string> tokens;
            for (std::size_t p = 0; p < pairs.size(); ++p) {
                const Value& v = ct.values[c_attr[p]];
                if (!v.has_value()) continue;
                for (auto& tok : normalize_tokens(*v)) tokens.insert(std::move(tok));
            }
            std::set<std::size_t> partners;
            for (const auto& tok : tokens) {
                auto it = block.find(tok);
                if (it == block.end()) continue;
                partners.insert(it->second.begin(), it->second.end());
            }
            for (std::size_t qi : partners) {
                if (matches(qi, ct)) {
                    ++matched;
                    break;
                }
            }
        }
        scores[c] = 1.0 - static_cast<double>(matched) /
                              static_cast<double>(cand.tuples.size());
    });
    return order_by_score("er", pp, scores, req.result_count);
}

RankedResult gmc_select(const RankRequest& req) {
    require_embeddings(req, "gmc");
    PoolProfile pp = build_profile(req, true);
    check_attribute_keys(pp, *req.embeddings);
    const std::size_t k = pp.size();
    const std::size_t l = req.result_count;

    std::vector<double> sim(k);
    parallel_for(k, pp.threads,
                 [&](std::size_t c) { sim[c] = profile_tablesim(pp, c, *req.embeddings); });
    const auto div = tablediv_matrix(pp, req.hyper.domain_threshold);

    // id-sorted scan order makes ties deterministic
    std::vector<std::size_t> scan(k);
    std::iota(scan.begin(), scan.end(), std::size_t{0});
    std::sort(scan.begin(), scan.end(),
              [&](std::size_t a, std::size_t b) { return pp.ids[a] < pp.ids[b]; });

    const double rel_coeff =
        static_cast<double>(l - 1) * (1.0 - req.hyper.lambda);
    std::vector<bool> selected(k, false);
    RankedResult out;
    out.method = "gmc";
    out.ranked = false;
    while (out.entries.size() < l) {
        double best_gain = -std::numeric_limits<double>::infinity();
        std::size_t best = k;
        for (std::size_t idx : scan) {
            if (selected[idx]) continue;
            double gain = rel_coeff * sim[idx];
            for (std::size_t s = 0; s < k; ++s)
                if (selected[s]) gain += 2.0 * req.hyper.lambda * div[idx][s];
            if (gain > best_gain) {
                best_gain = gain;
                best = idx;
            }
        }
        selected[best] = true;
        out.entries.push_back(RankedEntry{pp.ids[best], best_gain});
    }
    return out;
}

RankedResult gmm_select(const RankRequest& req, const std::string* seed_table) {
    PoolProfile pp = build_profile(req, true);
    const std::size_t k = pp.size();
    const std::size_t l = req.result_count;

    // syntactic distance from the query: anchors are the candidate's own pairs
    std::vector<double> dist_q(k);
    parallel_for(k, pp.threads, [&](std::size_t c) {
        double sum = 0.0;
        for (const auto& p : pp.pairs[c])
            sum += 1.0 - pair_syn_sim(pp, c, p, req.hyper.domain_threshold);
        dist_q[c] = sum / static_cast<double>(pp.pairs[c].size());
    });
    const auto div = tablediv_matrix(pp, req.hyper.domain_threshold);

    std::vector<std::size_t> scan(k);
    std::iota(scan.begin(), scan.end(), std::size_t{0});
    std::sort(scan.begin(), scan.end(),
              [&](std::size_t a, std::size_t b) { return pp.ids[a] < pp.ids[b]; });

    std::size_t first = k;
    if (seed_table != nullptr) {
        for (std::size_t i = 0; i < k; ++i)
            if (pp.ids[i] == *seed_table) first = i;
        if (first == k)
            throw ValidationError("seed table '" + *seed_table + "' is not in the pool");
    } else {
        double best = -std::numeric_limits<double>::infinity();
        for (std::size_t idx : scan)
            if (dist_q[idx] > best) {
                best = dist_q[idx];
                first = idx;
            }
    }

    std::vector<bool> selected(k, false);
    selected[first] = true;
    RankedResult out;
    out.method = "gmm";
    out.ranked = false;
    out.entries.push_back(RankedEntry{pp.ids[first], dist_q[first]});
    while (out.entries.size() < l) {
        double best_d = -std::numeric_limits<double>::infinity();
        std::size_t best = k;
        for (std::size_t idx : scan) {
            if (selected[idx]) continue;
            double d = std::numeric_limits<double>::infinity();
            for (std::size_t s = 0; s < k; ++s)
                if (selected[s]) d = std::min(d, div[idx][s]);
            if (d > best_d) {
                best_d = d;
                best = idx;
            }
        }
        selected[best] = true;
        out.entries.push_back(RankedEntry{pp.ids[best], best_d});
    }
    return out;
}

double tablesim_to_query(const RankRequest& req, const std::string& candidate_id) {
    require_embeddings(req, "tablesim");
    PoolProfile pp = build_profile(req, false);
    for (std::size_t c = 0; c < pp.size(); ++c)
        if (pp.ids[c] == candidate_id) return profile_tablesim(pp, c, *req.embeddings);
    throw ValidationError("table '" + candidate_id + "' is not in the pool");
}

double tablediv_between(const RankRequest& req, const std::string& candidate_a,
                        const std::string& candidate_b) {
    PoolProfile pp = build_profile(req, true);
    std::size_t ia = pp.size(), ib = pp.size();
    for (std::size_t c = 0; c < pp.size(); ++c) {
        if (pp.ids[c] == candidate_a) ia = c;
        if (pp.ids[c] == candidate_b) ib = c;
    }
    if (ia == pp.size())
        throw ValidationError("table '" + candidate_a + "' is not in the pool");
    if (ib == pp.size())
        throw ValidationError("table '" + candidate_b + "' is not in the pool");
    return profile_tablediv(pp, ia, ib, req.hyper.domain_threshold);
}

}  // namespace nts
