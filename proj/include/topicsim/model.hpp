#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "topicsim/preprocess.hpp"

namespace topicsim {

struct LdaConfig {
    std::size_t k = 10;
    double alpha = 0.0;  // <= 0 means 1/k
    double beta = 0.0;   // <= 0 means 1/k
    std::size_t iterations = 500;
    std::uint64_t seed = 1;

    double effective_alpha() const { return alpha > 0.0 ? alpha : 1.0 / static_cast<double>(k); }
    double effective_beta() const { return beta > 0.0 ? beta : 1.0 / static_cast<double>(k); }
    void validate() const;
};

struct ModelError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Dense row-stochastic matrix, rows sum to 1.
using DenseMatrix = std::vector<std::vector<double>>;

struct TopicModel {
    DenseMatrix theta;  // n_docs x k
    DenseMatrix phi;    // k x n_terms
    LdaConfig config;
    std::vector<std::string> doc_ids;    // aligned with theta rows
    std::vector<std::string> terms;      // aligned with phi columns

    std::size_t n_docs() const { return theta.size(); }
    std::size_t n_topics() const { return phi.size(); }
    std::size_t n_terms() const { return terms.size(); }
};

struct Assignment {
    std::vector<std::size_t> topic_of;  // aligned with model doc order
};

// Seeded collapsed Gibbs sampling over the integer count matrix.
// Documents are visited in lexicographic doc-id order, so the sampled state
// for a given document does not depend on corpus row order.
TopicModel train_lda(const DocumentTermMatrix& dtm, const LdaConfig& config);

// Per-document argmax over theta, ties to the lowest topic index.
Assignment assign_topics(const TopicModel& model);

std::size_t argmax_row(const std::vector<double>& row);

// n highest-probability terms, descending, ties lexicographic.
std::vector<std::pair<std::string, double>> top_terms(const TopicModel& model,
                                                      std::size_t topic,
                                                      std::size_t n);

// n highest-theta documents for a topic, ties by document order.
std::vector<std::pair<std::string, double>> top_documents(const TopicModel& model,
                                                          std::size_t topic,
                                                          std::size_t n);

// Sparse-triplet serialization (6 significant digits) for report replay.
void save_model(const TopicModel& model, const std::string& path,
                std::uint64_t config_digest);
TopicModel load_model(const std::string& path);

}  // namespace topicsim
