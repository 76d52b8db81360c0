#pragma once

#include <map>
#include <string>
#include <vector>

#include "nts/rankers.hpp"

namespace nts {

/**
 * Bookkeeping for a generated benchmark pool: which tables are originals,
 * which diluted version belongs to each, and where the injected query copy
 * lives.
 */
struct EvalPool {
    std::string query_id;
    std::string query_copy_id;
    std::string diluted_query_id;
    std::vector<std::string> originals;               // every table with a diluted twin
    std::map<std::string, std::string> diluted_of;    // original id -> diluted id
};

/** 1 when the query (or its injected copy) appears among the results. */
int blatant_duplicate(const RankedResult& result, const EvalPool& pool);

/**
 * Rank-sensitive novelty metric in [0, 1]. Charges one unit for every
 * original whose diluted twin was returned without it (for the query copy:
 * returned without its twin), and one for every original ranked below its
 * twin (for the query copy: above). Requires a ranked result; set-valued
 * methods should use ssnm instead.
 */
double snm(const RankedResult& result, const EvalPool& pool);

/** Set variant of snm: only the membership charges, no rank comparisons. */
double ssnm(const RankedResult& result, const EvalPool& pool);

/**
 * The greedy trade-off objective evaluated on a finished selection:
 * (l-1)(1-lambda) * sum tablesim(q,T) + 2 lambda * sum pairwise tablediv.
 */
double f_value(const RankRequest& req, const std::vector<std::string>& selected);

}  // namespace nts
