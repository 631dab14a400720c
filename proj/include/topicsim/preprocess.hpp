#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "topicsim/corpus.hpp"

namespace topicsim {

enum class Weighting { Tf, TfIdf };

struct PreprocessConfig {
    bool remove_stop_terms = true;
    std::vector<std::string> stop_additions;
    std::vector<std::string> stop_removals;
    bool stem = true;
    int min_token_length = 3;
    bool drop_numeric_tokens = true;
    std::optional<double> rare_df_threshold;        // fraction of documents
    std::optional<double> ubiquitous_df_threshold;  // fraction of documents
    Weighting weighting = Weighting::TfIdf;
    // replaces the shipped default list when set (one term per line files
    // load into this)
    std::optional<std::vector<std::string>> stop_list_override;

    void validate() const;
};

struct PreprocessError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The fixed default English stop list shipped with the artifact.
const std::vector<std::string>& default_stop_list();

// (default list ∪ additions) \ removals; empty when removal is disabled.
std::set<std::string> effective_stop_list(const PreprocessConfig& config);

// Lowercased alphanumeric 1-grams, length/numeric filtered.
std::vector<std::string> tokenize(const std::string& text,
                                  const PreprocessConfig& config);

std::vector<std::string> apply_stop_filter(const std::vector<std::string>& tokens,
                                           const std::set<std::string>& stoplist);

// Full per-document token pipeline: tokenize -> stop filter -> stem.
std::vector<std::vector<std::string>> tokenize_corpus(const Corpus& corpus,
                                                      const PreprocessConfig& config);

struct Vocabulary {
    std::vector<std::string> terms;  // lexicographically sorted
    std::unordered_map<std::string, std::size_t> index;
    std::vector<std::size_t> doc_frequency;  // aligned with terms

    std::size_t size() const { return terms.size(); }
};

Vocabulary build_vocabulary(const std::vector<std::vector<std::string>>& token_lists,
                            const PreprocessConfig& config);

// One sparse row per retained document; columns sorted ascending.
struct SparseRow {
    std::vector<std::size_t> cols;
    std::vector<double> values;
};

struct DocumentTermMatrix {
    std::vector<std::string> row_ids;    // corpus order, minus dropped docs
    Vocabulary vocab;
    std::vector<SparseRow> counts;       // raw token counts
    std::vector<SparseRow> weights;      // tf or tf-idf, same sparsity
    std::vector<std::string> dropped_docs;

    std::size_t n_docs() const { return row_ids.size(); }
    std::size_t n_terms() const { return vocab.size(); }

    std::uint64_t digest() const;
};

DocumentTermMatrix vectorize(const Corpus& corpus,
                             const std::vector<std::vector<std::string>>& token_lists,
                             const Vocabulary& vocab,
                             const PreprocessConfig& config);

// Convenience: full preparation stage.
DocumentTermMatrix preprocess_corpus(const Corpus& corpus,
                                     const PreprocessConfig& config);

double idf(std::size_t n_docs, std::size_t df);

std::vector<std::string> load_stop_list_file(const std::string& path);

}  // namespace topicsim
