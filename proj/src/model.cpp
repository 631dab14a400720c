#include "topicsim/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>

#include <json.hpp>

#include "topicsim/rng.hpp"

namespace topicsim {

void LdaConfig::validate() const {
    if (k < 1) throw ModelError("k must be >= 1");
    if (iterations < 1) throw ModelError("iterations must be >= 1");
    if (alpha < 0.0 || beta < 0.0) throw ModelError("alpha/beta must be >= 0");
}

TopicModel train_lda(const DocumentTermMatrix& dtm, const LdaConfig& config) {
    config.validate();
    const std::size_t n = dtm.n_docs();
    const std::size_t V = dtm.n_terms();
    const std::size_t K = config.k;
    if (n == 0) throw ModelError("empty document-term matrix");
    if (K > n) throw ModelError("k exceeds number of documents");

    const double alpha = config.effective_alpha();
    const double beta = config.effective_beta();
    const double vbeta = static_cast<double>(V) * beta;

    // token instances per document, expanded from integer counts
    std::vector<std::vector<std::size_t>> words(n);
    for (std::size_t d = 0; d < n; ++d) {
        const auto& row = dtm.counts[d];
        for (std::size_t i = 0; i < row.cols.size(); ++i) {
            auto c = static_cast<std::size_t>(std::llround(row.values[i]));
            for (std::size_t r = 0; r < c; ++r) words[d].push_back(row.cols[i]);
        }
    }

    // fixed visitation order: lexicographic by doc id
    std::vector<std::size_t> visit(n);
    std::iota(visit.begin(), visit.end(), std::size_t{0});
    std::sort(visit.begin(), visit.end(), [&](std::size_t a, std::size_t b) {
        return dtm.row_ids[a] < dtm.row_ids[b];
    });

    std::vector<std::vector<std::size_t>> z(n);
    std::vector<std::size_t> n_dt(n * K, 0);  // doc-topic counts
    std::vector<std::size_t> n_tw(K * V, 0);  // topic-term counts
    std::vector<std::size_t> n_t(K, 0);       // topic totals

    Rng rng(config.seed);
    for (std::size_t vi = 0; vi < n; ++vi) {
        const std::size_t d = visit[vi];
        z[d].resize(words[d].size());
        for (std::size_t i = 0; i < words[d].size(); ++i) {
            const std::size_t k = rng.uniform_index(K);
            z[d][i] = k;
            ++n_dt[d * K + k];
            ++n_tw[k * V + words[d][i]];
            ++n_t[k];
        }
    }

    std::vector<double> p(K);
    for (std::size_t iter = 0; iter < config.iterations; ++iter) {
        for (std::size_t vi = 0; vi < n; ++vi) {
            const std::size_t d = visit[vi];
            for (std::size_t i = 0; i < words[d].size(); ++i) {
                const std::size_t w = words[d][i];
                const std::size_t old = z[d][i];
                --n_dt[d * K + old];
                --n_tw[old * V + w];
                --n_t[old];

                double total = 0.0;
                for (std::size_t k = 0; k < K; ++k) {
                    total += (static_cast<double>(n_dt[d * K + k]) + alpha) *
                             (static_cast<double>(n_tw[k * V + w]) + beta) /
                             (static_cast<double>(n_t[k]) + vbeta);
                    p[k] = total;
                }
                const double u = rng.uniform01() * total;
                std::size_t k = 0;
                while (k + 1 < K && u >= p[k]) ++k;

                z[d][i] = k;
                ++n_dt[d * K + k];
                ++n_tw[k * V + w];
                ++n_t[k];
            }
        }
    }

    TopicModel model;
    model.config = config;
    model.doc_ids = dtm.row_ids;
    model.terms = dtm.vocab.terms;
    model.theta.assign(n, std::vector<double>(K, 0.0));
    model.phi.assign(K, std::vector<double>(V, 0.0));
    for (std::size_t d = 0; d < n; ++d) {
        const double denom = static_cast<double>(words[d].size()) +
                             static_cast<double>(K) * alpha;
        for (std::size_t k = 0; k < K; ++k)
            model.theta[d][k] = (static_cast<double>(n_dt[d * K + k]) + alpha) / denom;
    }
    for (std::size_t k = 0; k < K; ++k) {
        const double denom = static_cast<double>(n_t[k]) + vbeta;
        for (std::size_t w = 0; w < V; ++w)
            model.phi[k][w] = (static_cast<double>(n_tw[k * V + w]) + beta) / denom;
    }
    return model;
}

std::size_t argmax_row(const std::vector<double>& row) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < row.size(); ++i)
        if (row[i] > row[best]) best = i;
    return best;
}

Assignment assign_topics(const TopicModel& model) {
    Assignment a;
    a.topic_of.reserve(model.n_docs());
    for (const auto& row : model.theta) a.topic_of.push_back(argmax_row(row));
    return a;
}

std::vector<std::pair<std::string, double>> top_terms(const TopicModel& model,
                                                      std::size_t topic,
                                                      std::size_t n) {
    if (topic >= model.n_topics()) throw ModelError("topic index out of range");
    const auto& row = model.phi[topic];
    std::vector<std::size_t> order(row.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (row[a] != row[b]) return row[a] > row[b];
        return model.terms[a] < model.terms[b];
    });
    const std::size_t m = std::min(n, order.size());
    std::vector<std::pair<std::string, double>> out;
    out.reserve(m);
    for (std::size_t i = 0; i < m; ++i)
        out.emplace_back(model.terms[order[i]], row[order[i]]);
    return out;
}

std::vector<std::pair<std::string, double>> top_documents(const TopicModel& model,
                                                          std::size_t topic,
                                                          std::size_t n) {
    if (topic >= model.n_topics()) throw ModelError("topic index out of range");
    std::vector<std::size_t> order(model.n_docs());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return model.theta[a][topic] > model.theta[b][topic];
    });
    const std::size_t m = std::min(n, order.size());
    std::vector<std::pair<std::string, double>> out;
    out.reserve(m);
    for (std::size_t i = 0; i < m; ++i)
        out.emplace_back(model.doc_ids[order[i]], model.theta[order[i]][topic]);
    return out;
}

namespace {

double round6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return std::strtod(buf, nullptr);
}

nlohmann::json triplets(const DenseMatrix& m) {
    nlohmann::json out = nlohmann::json::array();
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m[i].size(); ++j)
            if (m[i][j] != 0.0)
                out.push_back({i, j, round6(m[i][j])});
    return out;
}

DenseMatrix from_triplets(const nlohmann::json& j, std::size_t rows, std::size_t cols) {
    DenseMatrix m(rows, std::vector<double>(cols, 0.0));
    for (const auto& t : j)
        m[t.at(0).get<std::size_t>()][t.at(1).get<std::size_t>()] = t.at(2).get<double>();
    return m;
}

}  // namespace

void save_model(const TopicModel& model, const std::string& path,
                std::uint64_t config_digest) {
    nlohmann::json j;
    j["config"] = {{"k", model.config.k},
                   {"alpha", model.config.alpha},
                   {"beta", model.config.beta},
                   {"iterations", model.config.iterations},
                   {"seed", model.config.seed}};
    j["config_digest"] = config_digest;
    j["n_topics"] = model.n_topics();
    j["doc_ids"] = model.doc_ids;
    j["terms"] = model.terms;
    j["theta"] = triplets(model.theta);
    j["phi"] = triplets(model.phi);
    std::ofstream out(path);
    if (!out) throw ModelError("cannot write model file: " + path);
    out << j.dump();
}

TopicModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ModelError("cannot open model file: " + path);
    nlohmann::json j = nlohmann::json::parse(in);
    TopicModel model;
    const auto& c = j.at("config");
    model.config.k = c.at("k").get<std::size_t>();
    model.config.alpha = c.at("alpha").get<double>();
    model.config.beta = c.at("beta").get<double>();
    model.config.iterations = c.at("iterations").get<std::size_t>();
    model.config.seed = c.at("seed").get<std::uint64_t>();
    model.doc_ids = j.at("doc_ids").get<std::vector<std::string>>();
    model.terms = j.at("terms").get<std::vector<std::string>>();
    const auto k = j.at("n_topics").get<std::size_t>();
    model.theta = from_triplets(j.at("theta"), model.doc_ids.size(), k);
    model.phi = from_triplets(j.at("phi"), k, model.terms.size());
    return model;
}

}  // namespace topicsim
