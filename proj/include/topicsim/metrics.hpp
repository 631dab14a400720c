#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "topicsim/preprocess.hpp"

namespace topicsim {

struct MetricsError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PairCounts {
    std::uint64_t tp = 0, tn = 0, fp = 0, fn = 0;
    std::uint64_t total() const { return tp + tn + fp + fn; }
};

// The M=8 scalar vector behind the impact score. Order here is the CSV
// column order; do not reorder.
struct MetricsVector {
    double accuracy_mean = 0.0;
    double accuracy_weighted = 0.0;
    double f1 = 0.0;
    double fmi = 0.0;
    double homogeneity = 0.0;
    double completeness = 0.0;
    double v_measure = 0.0;
    double silhouette_rescaled = 0.0;  // (silhouette + 1) / 2

    static constexpr std::size_t kSize = 8;
    static const std::array<const char*, kSize>& names();
    double& operator[](std::size_t i);
    double operator[](std::size_t i) const;
};

struct ClassAccuracy {
    std::map<std::string, double> per_class;
    double mean = 0.0;
    double weighted_mean = 0.0;
};

// Unsupervised class accuracy: per ground-truth class, the largest fraction
// of its documents landing in a single predicted topic.
ClassAccuracy class_accuracy(const std::vector<std::string>& gt_labels,
                             const std::vector<std::size_t>& pred_topics);

struct PairwiseResult {
    double f1 = 0.0;
    double fmi = 0.0;
    PairCounts counts;
};

// Pair-counting F1 / Fowlkes-Mallows. Sampled mode draws n_pairs random
// unordered pairs of distinct documents; exact mode enumerates all C(n,2).
PairwiseResult pairwise_f1_fmi_exact(const std::vector<std::string>& gt_labels,
                                     const std::vector<std::size_t>& pred_topics);
PairwiseResult pairwise_f1_fmi_sampled(const std::vector<std::string>& gt_labels,
                                       const std::vector<std::size_t>& pred_topics,
                                       std::size_t n_pairs, std::uint64_t seed);

struct HCV {
    double homogeneity = 0.0;
    double completeness = 0.0;
    double v_measure = 0.0;
};

// Entropy-based scores (natural log) from the empirical joint distribution.
HCV homogeneity_completeness_v(const std::vector<std::string>& gt_labels,
                               const std::vector<std::size_t>& pred_topics);

// Mean silhouette with cosine distance over sparse feature rows.
// Subsamples to max_sample documents with the given seed; singleton-cluster
// members score 0. Throws when fewer than 2 clusters are present.
double silhouette(const std::vector<SparseRow>& features,
                  const std::vector<std::size_t>& pred_topics,
                  std::size_t max_sample, std::uint64_t seed);

double cosine_distance(const SparseRow& a, const SparseRow& b);

struct TopicDistances {
    std::vector<std::vector<double>> kl;      // asymmetric, zero diagonal
    std::vector<std::vector<double>> js;      // 1 - JSD (base 2), symmetric
    std::vector<std::vector<double>> cosine;  // symmetric, unit diagonal
};

TopicDistances topic_distances(const std::vector<std::vector<double>>& phi);

// Eq-style normalized l1 distance across the M=8 metrics.
double impact_score(const MetricsVector& baseline, const MetricsVector& run);

}  // namespace topicsim
