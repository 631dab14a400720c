#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace topicsim {

struct Document {
    std::string id;
    std::string text;
    std::vector<std::string> labels;
};

// Immutable after load; document order is the canonical tie-breaking order
// for everything downstream.
struct Corpus {
    std::vector<Document> documents;
    std::set<std::string> label_set;

    std::size_t size() const { return documents.size(); }

    void rebuild_label_set();
};

struct CorpusError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Line-delimited JSON records: {"id": ..., "text": ..., "labels": [...]}.
Corpus load_corpus(const std::string& path);
void save_corpus(const Corpus& corpus, const std::string& path);

Corpus corpus_from_documents(std::vector<Document> docs);

// Keeps exactly the documents with a single label.
Corpus filter_single_label(const Corpus& corpus);

std::map<std::string, std::size_t> label_histogram(const Corpus& corpus);

}  // namespace topicsim
