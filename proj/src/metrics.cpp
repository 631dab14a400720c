#include "topicsim/metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <unordered_map>

#include "topicsim/rng.hpp"

namespace topicsim {

const std::array<const char*, MetricsVector::kSize>& MetricsVector::names() {
    static const std::array<const char*, kSize> kNames = {
        "accuracy_mean",  "accuracy_weighted", "f1",        "fmi",
        "homogeneity",    "completeness",      "v_measure", "silhouette_rescaled"};
    return kNames;
}

double& MetricsVector::operator[](std::size_t i) {
    double* fields[] = {&accuracy_mean, &accuracy_weighted, &f1,        &fmi,
                        &homogeneity,   &completeness,      &v_measure, &silhouette_rescaled};
    return *fields[i];
}

double MetricsVector::operator[](std::size_t i) const {
    return const_cast<MetricsVector&>(*this)[i];
}

ClassAccuracy class_accuracy(const std::vector<std::string>& gt_labels,
                             const std::vector<std::size_t>& pred_topics) {
    if (gt_labels.empty()) throw MetricsError("class_accuracy: empty input");
    if (gt_labels.size() != pred_topics.size())
        throw MetricsError("class_accuracy: label/prediction size mismatch");

    // class -> topic -> count
    std::map<std::string, std::unordered_map<std::size_t, std::size_t>> table;
    std::map<std::string, std::size_t> class_size;
    for (std::size_t i = 0; i < gt_labels.size(); ++i) {
        ++table[gt_labels[i]][pred_topics[i]];
        ++class_size[gt_labels[i]];
    }

    ClassAccuracy acc;
    double weighted_sum = 0.0;
    for (const auto& [cls, topics] : table) {
        std::size_t best = 0;
        for (const auto& [topic, count] : topics) best = std::max(best, count);
        const double a = static_cast<double>(best) / static_cast<double>(class_size[cls]);
        acc.per_class[cls] = a;
        acc.mean += a;
        weighted_sum += a * static_cast<double>(class_size[cls]);
    }
    acc.mean /= static_cast<double>(table.size());
    acc.weighted_mean = weighted_sum / static_cast<double>(gt_labels.size());
    return acc;
}

namespace {

PairwiseResult finish_pairwise(const PairCounts& counts) {
    PairwiseResult r;
    r.counts = counts;
    const double tp = static_cast<double>(counts.tp);
    const double fp = static_cast<double>(counts.fp);
    const double fn = static_cast<double>(counts.fn);
    const double f1_denom = tp + 0.5 * (fp + fn);
    r.f1 = f1_denom > 0.0 ? tp / f1_denom : 0.0;
    const double fmi_denom = (tp + fp) * (tp + fn);
    r.fmi = fmi_denom > 0.0 ? tp / std::sqrt(fmi_denom) : 0.0;
    return r;
}

void classify_pair(PairCounts& counts, bool same_gt, bool same_pred) {
    if (same_gt && same_pred) ++counts.tp;
    else if (same_gt) ++counts.fn;
    else if (same_pred) ++counts.fp;
    else ++counts.tn;
}

}  // namespace

PairwiseResult pairwise_f1_fmi_exact(const std::vector<std::string>& gt_labels,
                                     const std::vector<std::size_t>& pred_topics) {
    const std::size_t n = gt_labels.size();
    if (n < 2) throw MetricsError("pairwise metrics need >= 2 documents");
    if (pred_topics.size() != n)
        throw MetricsError("pairwise metrics: size mismatch");
    PairCounts counts;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            classify_pair(counts, gt_labels[i] == gt_labels[j],
                          pred_topics[i] == pred_topics[j]);
    return finish_pairwise(counts);
}

PairwiseResult pairwise_f1_fmi_sampled(const std::vector<std::string>& gt_labels,
                                       const std::vector<std::size_t>& pred_topics,
                                       std::size_t n_pairs, std::uint64_t seed) {
    const std::size_t n = gt_labels.size();
    if (n < 2) throw MetricsError("pairwise metrics need >= 2 documents");
    if (pred_topics.size() != n)
        throw MetricsError("pairwise metrics: size mismatch");
    Rng rng(seed);
    PairCounts counts;
    for (std::size_t s = 0; s < n_pairs; ++s) {
        const std::size_t i = rng.uniform_index(n);
        std::size_t j = rng.uniform_index(n - 1);
        if (j >= i) ++j;
        classify_pair(counts, gt_labels[i] == gt_labels[j],
                      pred_topics[i] == pred_topics[j]);
    }
    return finish_pairwise(counts);
}

HCV homogeneity_completeness_v(const std::vector<std::string>& gt_labels,
                               const std::vector<std::size_t>& pred_topics) {
    const std::size_t n = gt_labels.size();
    if (n == 0) throw MetricsError("homogeneity: empty input");
    if (pred_topics.size() != n) throw MetricsError("homogeneity: size mismatch");

    std::map<std::string, std::size_t> gt_count;
    std::unordered_map<std::size_t, std::size_t> pred_count;
    std::map<std::pair<std::string, std::size_t>, std::size_t> joint;
    for (std::size_t i = 0; i < n; ++i) {
        ++gt_count[gt_labels[i]];
        ++pred_count[pred_topics[i]];
        ++joint[{gt_labels[i], pred_topics[i]}];
    }

    const double dn = static_cast<double>(n);
    // All sums run over sorted count multisets so the result is independent of
    // label values and map iteration order; relabeling clusters must leave
    // every score bit-identical.
    auto entropy = [dn](const auto& count_map) {
        std::vector<std::size_t> counts;
        for (const auto& [key, c] : count_map) counts.push_back(c);
        std::sort(counts.begin(), counts.end());
        double h = 0.0;
        for (const auto c : counts) {
            const double p = static_cast<double>(c) / dn;
            h -= p * std::log(p);
        }
        return h;
    };
    const double h_gt = entropy(gt_count);
    const double h_pred = entropy(pred_count);

    // H(gt|pred) and H(pred|gt) from (joint count, marginal count) terms
    auto conditional = [dn](std::vector<std::pair<std::size_t, std::size_t>> terms) {
        std::sort(terms.begin(), terms.end());
        double h = 0.0;
        for (const auto& [c, marginal] : terms) {
            const double pj = static_cast<double>(c) / dn;
            h -= pj * std::log(static_cast<double>(c) / static_cast<double>(marginal));
        }
        return h;
    };
    std::vector<std::pair<std::size_t, std::size_t>> gp_terms, pg_terms;
    for (const auto& [key, c] : joint) {
        gp_terms.emplace_back(c, pred_count[key.second]);
        pg_terms.emplace_back(c, gt_count[key.first]);
    }
    const double h_gt_given_pred = conditional(std::move(gp_terms));
    const double h_pred_given_gt = conditional(std::move(pg_terms));

    HCV out;
    out.homogeneity = h_gt > 0.0 ? 1.0 - h_gt_given_pred / h_gt : 1.0;
    out.completeness = h_pred > 0.0 ? 1.0 - h_pred_given_gt / h_pred : 1.0;
    const double hc = out.homogeneity + out.completeness;
    out.v_measure = hc > 0.0 ? 2.0 * out.homogeneity * out.completeness / hc : 0.0;
    return out;
}

double cosine_distance(const SparseRow& a, const SparseRow& b) {
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (double v : a.values) na += v * v;
    for (double v : b.values) nb += v * v;
    std::size_t i = 0, j = 0;
    while (i < a.cols.size() && j < b.cols.size()) {
        if (a.cols[i] == b.cols[j]) {
            dot += a.values[i] * b.values[j];
            ++i; ++j;
        } else if (a.cols[i] < b.cols[j]) {
            ++i;
        } else {
            ++j;
        }
    }
    if (na == 0.0 || nb == 0.0) return 1.0;
    double sim = dot / (std::sqrt(na) * std::sqrt(nb));
    sim = std::clamp(sim, -1.0, 1.0);
    return 1.0 - sim;
}

double silhouette(const std::vector<SparseRow>& features,
                  const std::vector<std::size_t>& pred_topics,
                  std::size_t max_sample, std::uint64_t seed) {
    const std::size_t n = features.size();
    if (pred_topics.size() != n) throw MetricsError("silhouette: size mismatch");
    if (n < 2) throw MetricsError("silhouette undefined: fewer than 2 documents");

    std::vector<std::size_t> sample(n);
    std::iota(sample.begin(), sample.end(), std::size_t{0});
    if (max_sample > 0 && n > max_sample) {
        Rng rng(seed);
        sample = rng.sample_without_replacement(n, max_sample);
        std::sort(sample.begin(), sample.end());
    }
    const std::size_t s = sample.size();

    // remap clusters present in the sample to dense ids
    std::unordered_map<std::size_t, std::size_t> cluster_id;
    std::vector<std::size_t> member_cluster(s);
    for (std::size_t i = 0; i < s; ++i) {
        auto [it, inserted] =
            cluster_id.emplace(pred_topics[sample[i]], cluster_id.size());
        member_cluster[i] = it->second;
    }
    const std::size_t nc = cluster_id.size();
    if (nc < 2) throw MetricsError("silhouette undefined: single cluster");

    std::vector<std::size_t> cluster_size(nc, 0);
    for (auto c : member_cluster) ++cluster_size[c];

    double total = 0.0;
    std::vector<double> mean_dist(nc);
    for (std::size_t i = 0; i < s; ++i) {
        const std::size_t ci = member_cluster[i];
        if (cluster_size[ci] <= 1) continue;  // singleton convention: s(d)=0
        std::fill(mean_dist.begin(), mean_dist.end(), 0.0);
        for (std::size_t j = 0; j < s; ++j) {
            if (i == j) continue;
            mean_dist[member_cluster[j]] +=
                cosine_distance(features[sample[i]], features[sample[j]]);
        }
        const double a = mean_dist[ci] / static_cast<double>(cluster_size[ci] - 1);
        double b = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < nc; ++c) {
            if (c == ci || cluster_size[c] == 0) continue;
            b = std::min(b, mean_dist[c] / static_cast<double>(cluster_size[c]));
        }
        const double denom = std::max(a, b);
        total += denom > 0.0 ? (b - a) / denom : 0.0;
    }
    return total / static_cast<double>(s);
}

namespace {

constexpr double kKlEpsilon = 1e-12;

std::vector<double> smooth_normalize(const std::vector<double>& p) {
    std::vector<double> q(p.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) sum += p[i] + kKlEpsilon;
    for (std::size_t i = 0; i < p.size(); ++i) q[i] = (p[i] + kKlEpsilon) / sum;
    return q;
}

// base-2 Jensen-Shannon divergence, in [0,1]
double jsd2(const std::vector<double>& p, const std::vector<double>& q) {
    double d = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double m = 0.5 * (p[i] + q[i]);
        if (p[i] > 0.0) d += 0.5 * p[i] * std::log2(p[i] / m);
        if (q[i] > 0.0) d += 0.5 * q[i] * std::log2(q[i] / m);
    }
    return std::clamp(d, 0.0, 1.0);
}

double cosine_sim_dense(const std::vector<double>& p, const std::vector<double>& q) {
    double dot = 0.0, np = 0.0, nq = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        dot += p[i] * q[i];
        np += p[i] * p[i];
        nq += q[i] * q[i];
    }
    if (np == 0.0 || nq == 0.0) return 0.0;
    return std::clamp(dot / (std::sqrt(np) * std::sqrt(nq)), -1.0, 1.0);
}

}  // namespace

TopicDistances topic_distances(const std::vector<std::vector<double>>& phi) {
    const std::size_t k = phi.size();
    TopicDistances d;
    d.kl.assign(k, std::vector<double>(k, 0.0));
    d.js.assign(k, std::vector<double>(k, 0.0));
    d.cosine.assign(k, std::vector<double>(k, 0.0));

    std::vector<std::vector<double>> smoothed;
    smoothed.reserve(k);
    for (const auto& row : phi) smoothed.push_back(smooth_normalize(row));

    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            if (i == j) {
                d.js[i][j] = 1.0;
                d.cosine[i][j] = 1.0;
                continue;
            }
            double kl = 0.0;
            for (std::size_t w = 0; w < phi[i].size(); ++w)
                kl += smoothed[i][w] * std::log(smoothed[i][w] / smoothed[j][w]);
            d.kl[i][j] = std::max(kl, 0.0);
            if (j > i) {
                d.js[i][j] = d.js[j][i] = 1.0 - jsd2(phi[i], phi[j]);
                d.cosine[i][j] = d.cosine[j][i] = cosine_sim_dense(phi[i], phi[j]);
            }
        }
    }
    return d;
}

double impact_score(const MetricsVector& baseline, const MetricsVector& run) {
    double sum = 0.0;
    for (std::size_t i = 0; i < MetricsVector::kSize; ++i)
        sum += std::abs(baseline[i] - run[i]);
    return sum / static_cast<double>(MetricsVector::kSize);
}

}  // namespace topicsim
