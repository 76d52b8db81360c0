#include "nts/similarity.hpp"

#include <algorithm>
#include <cmath>

#include "nts/errors.hpp"

namespace nts {

std::vector<std::string> union_support(const NormalizedDomain& a, const NormalizedDomain& b) {
    std::vector<std::string> out;
    out.reserve(a.as_set.size() + b.as_set.size());
    std::set_union(a.as_set.begin(), a.as_set.end(), b.as_set.begin(), b.as_set.end(),
                   std::back_inserter(out));
    return out;
}

Distribution domain_distribution(const NormalizedDomain& d,
                                 const std::vector<std::string>& support) {
    if (d.total == 0)
        throw ValidationError("cannot build a distribution from an empty domain");
    Distribution out;
    out.support = support;
    out.mass.assign(support.size(), 0.0);
    auto it = d.as_multiset.begin();
    for (std::size_t i = 0; i < support.size() && it != d.as_multiset.end(); ++i) {
        if (it->first == support[i]) {
            out.mass[i] = static_cast<double>(it->second) / static_cast<double>(d.total);
            ++it;
        }
    }
    if (it != d.as_multiset.end())
        throw ValidationError("distribution support does not cover domain value '" +
                              it->first + "'");
    return out;
}

double jaccard(const NormalizedDomain& a, const NormalizedDomain& b) {
    if (a.as_set.empty() && b.as_set.empty()) return 1.0;
    std::size_t inter = 0;
    auto ia = a.as_set.begin();
    auto ib = b.as_set.begin();
    while (ia != a.as_set.end() && ib != b.as_set.end()) {
        if (*ia < *ib)
            ++ia;
        else if (*ib < *ia)
            ++ib;
        else {
            ++inter;
            ++ia;
            ++ib;
        }
    }
    const std::size_t uni = a.as_set.size() + b.as_set.size() - inter;
    return static_cast<double>(inter) / static_cast<double>(uni);
}

double jsd(const Distribution& a, const Distribution& b) {
    if (a.support != b.support)
        throw ValidationError("jsd requires distributions over one support");
    bool overlap = false;
    for (std::size_t i = 0; i < a.mass.size(); ++i)
        if (a.mass[i] > 0.0 && b.mass[i] > 0.0) {
            overlap = true;
            break;
        }
    if (!overlap) return 1.0;

    double div = 0.0;
    for (std::size_t i = 0; i < a.mass.size(); ++i) {
        const double x = a.mass[i];
        const double y = b.mass[i];
        const double mid = (x + y) / 2.0;
        if (x > 0.0) div += 0.5 * x * std::log2(x / mid);
        if (y > 0.0) div += 0.5 * y * std::log2(y / mid);
    }
    return std::min(1.0, std::sqrt(std::max(div, 0.0)));
}

double syn_sim(const NormalizedDomain& a, const NormalizedDomain& b,
               std::size_t domain_threshold) {
    if (a.empty() && b.empty()) return 1.0;
    if (a.empty() || b.empty()) return 0.0;
    const auto support = union_support(a, b);
    if (support.size() > domain_threshold) return jaccard(a, b);
    return 1.0 - jsd(domain_distribution(a, support), domain_distribution(b, support));
}

double syn_sim(const Table& a, const std::string& attr_a, const Table& b,
               const std::string& attr_b, std::size_t domain_threshold) {
    return syn_sim(extract_domain(a, attr_a), extract_domain(b, attr_b), domain_threshold);
}

namespace {

void check_vector(const std::string& key, const std::vector<double>& v) {
    if (v.empty()) throw ValidationError("embedding '" + key + "' has dimension 0");
    bool nonzero = false;
    for (double x : v) {
        if (!std::isfinite(x))
            throw ValidationError("embedding '" + key + "' has a non-finite component");
        if (x != 0.0) nonzero = true;
    }
    if (!nonzero) throw ValidationError("embedding '" + key + "' is the zero vector");
}

}  // namespace

void EmbeddingStore::add_attribute_vector(const std::string& table_id,
                                          const std::string& attr, std::vector<double> v) {
    const std::string key = table_id + "::" + attr;
    check_vector(key, v);
    if (attribute_dim_ == 0)
        attribute_dim_ = v.size();
    else if (v.size() != attribute_dim_)
        throw ValidationError("embedding '" + key + "' has dimension " +
                              std::to_string(v.size()) + ", expected " +
                              std::to_string(attribute_dim_));
    if (!attribute_vectors_.emplace(std::make_pair(table_id, attr), std::move(v)).second)
        throw ValidationError("duplicate embedding key '" + key + "'");
}

void EmbeddingStore::add_table_vector(const std::string& table_id, std::vector<double> v) {
    check_vector(table_id, v);
    if (table_dim_ == 0)
        table_dim_ = v.size();
    else if (v.size() != table_dim_)
        throw ValidationError("embedding '" + table_id + "' has dimension " +
                              std::to_string(v.size()) + ", expected " +
                              std::to_string(table_dim_));
    if (!table_vectors_.emplace(table_id, std::move(v)).second)
        throw ValidationError("duplicate embedding key '" + table_id + "'");
}

const std::vector<double>& EmbeddingStore::attribute_vector(const std::string& table_id,
                                                            const std::string& attr) const {
    auto it = attribute_vectors_.find(std::make_pair(table_id, attr));
    if (it == attribute_vectors_.end())
        throw ValidationError("no attribute embedding for '" + table_id + "::" + attr + "'");
    return it->second;
}

const std::vector<double>& EmbeddingStore::table_vector(const std::string& table_id) const {
    auto it = table_vectors_.find(table_id);
    if (it == table_vectors_.end())
        throw ValidationError("no table embedding for '" + table_id + "'");
    return it->second;
}

bool EmbeddingStore::has_attribute_vector(const std::string& table_id,
                                          const std::string& attr) const {
    return attribute_vectors_.count(std::make_pair(table_id, attr)) > 0;
}

bool EmbeddingStore::has_table_vector(const std::string& table_id) const {
    return table_vectors_.count(table_id) > 0;
}

double cosine(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size())
        throw ValidationError("cosine of vectors with different dimensions");
    if (a.empty()) throw ValidationError("cosine of empty vectors");
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    if (na == 0.0 || nb == 0.0)
        throw ValidationError("cosine of a zero vector is undefined");
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

double sem_sim(const EmbeddingStore& store, const std::string& query_id,
               const std::string& query_attr, const std::string& cand_id,
               const std::string& cand_attr) {
    return cosine(store.attribute_vector(query_id, query_attr),
                  store.attribute_vector(cand_id, cand_attr));
}

double table_sim(const EmbeddingStore& store, const std::string& query_id,
                 const std::string& cand_id) {
    const double c = cosine(store.table_vector(query_id), store.table_vector(cand_id));
    return std::clamp(c, 0.0, 1.0);
}

}  // namespace nts
