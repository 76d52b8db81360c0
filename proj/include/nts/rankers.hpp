#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "nts/normalize.hpp"
#include "nts/novelty.hpp"
#include "nts/similarity.hpp"
#include "nts/table.hpp"

namespace nts {

struct Hyper {
    std::size_t domain_threshold = 20;  // s: set-vs-distribution switch for syn_sim
    double novelty_exponent = 1.0;      // b: exponent on (1 - syn_sim)
    double lambda = 0.7;                // relevance/diversity trade-off
    double lev_threshold = 0.85;        // minimum normalized Levenshtein similarity
    std::uint64_t seed = 0;
};

struct RankRequest {
    const Table* query = nullptr;
    std::vector<PoolEntry> pool;
    std::size_t result_count = 0;  // l
    Hyper hyper;
    const EmbeddingStore* embeddings = nullptr;
    int threads = 1;
};

struct RankedEntry {
    std::string table_id;
    double score = 0.0;
};

/**
 * Output of one ranking method. When ranked is true the entries are a
 * relevance order with non-increasing scores; when false they are a
 * selected set and the order carries no meaning beyond determinism.
 */
struct RankedResult {
    std::string method;
    bool ranked = true;
    std::vector<RankedEntry> entries;  // length = result_count
};

/** (1 - syn_sim)^b * sem_sim for one aligned attribute pair. */
double att_novelty(double syntactic_similarity, double semantic_similarity,
                   const Hyper& hyper);

/** Sum of att_novelty over the alignment's pairs. */
double table_novelty(const Table& q, const Table& candidate, const Alignment& a,
                     const Hyper& hyper, const EmbeddingStore& store);

/** Approximate novelty ranking: sort by table_novelty, best first. */
RankedResult ants_rank(const RankRequest& req);

/**
 * Greedy relevance/diversity trade-off: grows the set by the candidate with
 * the best marginal gain of
 *   (l-1)(1-lambda) * sum tablesim(q,T) + 2 lambda * sum pairwise tablediv.
 * Set-valued.
 */
RankedResult gmc_select(const RankRequest& req);

/**
 * Greedy max-min diversification over pairwise tablediv. Starts from
 * seed_table when given, else from the candidate farthest from the query.
 * Set-valued.
 */
RankedResult gmm_select(const RankRequest& req, const std::string* seed_table = nullptr);

/** Ranks by sum over aligned pairs of (1 - table_sim)^b * sem_sim. */
RankedResult semnov_rank(const RankRequest& req);

/**
 * Ranks by the fraction of candidate tuples with no fuzzy match in the
 * query: token blocking over normalized aligned values, then a tuple pair
 * matches when every aligned attribute clears lev_threshold on raw text
 * (Null compares as empty text).
 */
RankedResult er_rank(const RankRequest& req);

/** Ranks by sum of aligned-pair cosines, most similar first. */
RankedResult sem_baseline_rank(const RankRequest& req);

/** 1 - edit_distance / max(len); 1 for two empty strings. Raw bytes. */
double levenshtein_similarity(std::string_view a, std::string_view b);

/** Mean aligned-pair cosine between the query and one pool candidate. */
double tablesim_to_query(const RankRequest& req, const std::string& candidate_id);

/**
 * Mean over query attributes aligned in both candidates of
 * (1 - syn_sim) between the two candidate attributes; 1 when the
 * candidates share no anchor attribute.
 */
double tablediv_between(const RankRequest& req, const std::string& candidate_a,
                        const std::string& candidate_b);

}  // namespace nts
