#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "nts/normalize.hpp"
#include "nts/table.hpp"

namespace nts {

/** A probability distribution over an explicit, sorted support. */
struct Distribution {
    std::vector<std::string> support;
    std::vector<double> mass;
};

/** Sorted union of the two set views. */
std::vector<std::string> union_support(const NormalizedDomain& a, const NormalizedDomain& b);

/** Relative frequencies of d's multiset over the given support. */
Distribution domain_distribution(const NormalizedDomain& d,
                                 const std::vector<std::string>& support);

/** Set Jaccard over the normalized domains; 1 when both are empty. */
double jaccard(const NormalizedDomain& a, const NormalizedDomain& b);

/**
 * Jensen-Shannon distance: sqrt of the base-2 divergence against the even
 * mixture. Zero-mass points contribute nothing. Returns exactly 1 when the
 * positive supports are disjoint and exactly 0 for identical distributions.
 * Both arguments must share one support.
 */
double jsd(const Distribution& a, const Distribution& b);

/**
 * Syntactic similarity of two attribute domains. When the union of the set
 * views exceeds domain_threshold elements this is plain Jaccard; otherwise
 * it is 1 - jsd over the multiset frequencies. Two empty domains give 1,
 * one empty domain gives 0.
 */
double syn_sim(const NormalizedDomain& a, const NormalizedDomain& b,
               std::size_t domain_threshold);
double syn_sim(const Table& a, const std::string& attr_a, const Table& b,
               const std::string& attr_b, std::size_t domain_threshold);

/**
 * Embedding vectors keyed by table id (table vectors) and by table id plus
 * attribute (attribute vectors). Each kind has one consistent dimension;
 * zero vectors and non-finite components are rejected on insert.
 */
class EmbeddingStore {
public:
    void add_attribute_vector(const std::string& table_id, const std::string& attr,
                              std::vector<double> v);
    void add_table_vector(const std::string& table_id, std::vector<double> v);

    const std::vector<double>& attribute_vector(const std::string& table_id,
                                                const std::string& attr) const;
    const std::vector<double>& table_vector(const std::string& table_id) const;

    bool has_attribute_vector(const std::string& table_id, const std::string& attr) const;
    bool has_table_vector(const std::string& table_id) const;

    std::size_t attribute_dim() const { return attribute_dim_; }  // 0 when none stored
    std::size_t table_dim() const { return table_dim_; }

    const std::map<std::pair<std::string, std::string>, std::vector<double>>&
    attribute_vectors() const {
        return attribute_vectors_;
    }
    const std::map<std::string, std::vector<double>>& table_vectors() const {
        return table_vectors_;
    }

private:
    std::map<std::pair<std::string, std::string>, std::vector<double>> attribute_vectors_;
    std::map<std::string, std::vector<double>> table_vectors_;
    std::size_t attribute_dim_ = 0;
    std::size_t table_dim_ = 0;
};

/** Cosine of two equal-length vectors. Not clamped. */
double cosine(std::span<const double> a, std::span<const double> b);

/** Cosine of the two attribute vectors, unclamped. */
double sem_sim(const EmbeddingStore& store, const std::string& query_id,
               const std::string& query_attr, const std::string& cand_id,
               const std::string& cand_attr);

/** Cosine of the two table vectors, clamped to [0, 1]. */
double table_sim(const EmbeddingStore& store, const std::string& query_id,
                 const std::string& cand_id);

}  // namespace nts
