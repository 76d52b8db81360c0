#include "nts/metrics.hpp"

#include <algorithm>

#include "nts/errors.hpp"

namespace nts {

namespace {

// 1-based rank of id in the result, 0 when absent.
std::size_t position(const RankedResult& r, const std::string& id) {
    for (std::size_t i = 0; i < r.entries.size(); ++i)
        if (r.entries[i].table_id == id) return i + 1;
    return 0;
}

bool is_query(const EvalPool& pool, const std::string& id) {
    return id == pool.query_id || (!pool.query_copy_id.empty() && id == pool.query_copy_id);
}

void validate_pool(const EvalPool& pool) {
    for (const auto& o : pool.originals)
        if (pool.diluted_of.find(o) == pool.diluted_of.end())
            throw ValidationError("original '" + o + "' has no diluted counterpart");
}

}  // namespace

int blatant_duplicate(const RankedResult& result, const EvalPool& pool) {
    for (const auto& e : result.entries) {
        if (e.table_id == pool.query_id) return 1;
        if (!pool.query_copy_id.empty() && e.table_id == pool.query_copy_id) return 1;
    }
    return 0;
}

double snm(const RankedResult& result, const EvalPool& pool) {
    if (!result.ranked)
        throw ValidationError("snm needs a ranked result; use ssnm for set-valued methods");
    validate_pool(pool);
    const std::size_t l = result.entries.size();
    if (l == 0) throw ValidationError("snm of an empty result");

    std::size_t charges = 0;
    for (const auto& orig : pool.originals) {
        const std::string& dil = pool.diluted_of.at(orig);
        const std::size_t po = position(result, orig);
        const std::size_t pd = position(result, dil);
        if (is_query(pool, orig)) {
            if (po != 0 && pd == 0)
                ++charges;  // the copy made it in without its diluted twin
            else if (po != 0 && pd != 0 && po < pd)
                ++charges;  // the copy outranks its diluted twin
        } else {
            if (pd != 0 && po == 0)
                ++charges;  // diluted twin in, original out
            else if (po != 0 && pd != 0 && po > pd)
                ++charges;  // original ranked below its diluted twin
        }
    }
    return 1.0 - static_cast<double>(charges) / static_cast<double>(l);
}

double ssnm(const RankedResult& result, const EvalPool& pool) {
    validate_pool(pool);
    const std::size_t l = result.entries.size();
    if (l == 0) throw ValidationError("ssnm of an empty result");

    std::size_t charges = 0;
    for (const auto& orig : pool.originals) {
        const std::string& dil = pool.diluted_of.at(orig);
        const bool has_o = position(result, orig) != 0;
        const bool has_d = position(result, dil) != 0;
        if (is_query(pool, orig)) {
            if (has_o && !has_d) ++charges;
        } else {
            if (has_d && !has_o) ++charges;
        }
    }
    return 1.0 - static_cast<double>(charges) / static_cast<double>(l);
}

double f_value(const RankRequest& req, const std::vector<std::string>& selected) {
    if (selected.empty()) throw ValidationError("f_value of an empty selection");
    const std::size_t l = selected.size();
    const double rel_coeff =
        static_cast<double>(l - 1) * (1.0 - req.hyper.lambda);
    double rel = 0.0;
    for (const auto& id : selected) rel += tablesim_to_query(req, id);
    double div = 0.0;
    for (std::size_t i = 0; i < l; ++i)
        for (std::size_t j = i + 1; j < l; ++j)
            div += tablediv_between(req, selected[i], selected[j]);
    return rel_coeff * rel + 2.0 * req.hyper.lambda * div;
}

}  // namespace nts
