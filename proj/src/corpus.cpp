#include "topicsim/corpus.hpp"

#include <fstream>
#include <unordered_set>

#include <json.hpp>

namespace topicsim {

void Corpus::rebuild_label_set() {
    label_set.clear();
    for (const auto& d : documents)
        label_set.insert(d.labels.begin(), d.labels.end());
}

Corpus corpus_from_documents(std::vector<Document> docs) {
    std::unordered_set<std::string> seen;
    for (const auto& d : docs) {
        if (d.id.empty()) throw CorpusError("document with empty id");
        if (!seen.insert(d.id).second)
            throw CorpusError("duplicate document id: " + d.id);
    }
    Corpus c;
    c.documents = std::move(docs);
    c.rebuild_label_set();
    return c;
}

Corpus load_corpus(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CorpusError("cannot open corpus file: " + path);

    std::vector<Document> docs;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        nlohmann::json rec;
        try {
            rec = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw CorpusError(path + ":" + std::to_string(lineno) +
                              ": unreadable record: " + e.what());
        }
        if (!rec.is_object() || !rec.contains("id") || !rec.contains("text"))
            throw CorpusError(path + ":" + std::to_string(lineno) +
                              ": record missing id/text");
        Document d;
        d.id = rec.at("id").get<std::string>();
        d.text = rec.at("text").get<std::string>();
        if (rec.contains("labels"))
            d.labels = rec.at("labels").get<std::vector<std::string>>();
        docs.push_back(std::move(d));
    }
    if (docs.empty()) throw CorpusError("empty corpus: " + path);
    return corpus_from_documents(std::move(docs));
}

void save_corpus(const Corpus& corpus, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw CorpusError("cannot write corpus file: " + path);
    for (const auto& d : corpus.documents) {
        nlohmann::json rec{{"id", d.id}, {"text", d.text}, {"labels", d.labels}};
        out << rec.dump() << '\n';
    }
}

Corpus filter_single_label(const Corpus& corpus) {
    std::vector<Document> kept;
    for (const auto& d : corpus.documents)
        if (d.labels.size() == 1) kept.push_back(d);
    Corpus c;
    c.documents = std::move(kept);
    c.rebuild_label_set();
    return c;
}

std::map<std::string, std::size_t> label_histogram(const Corpus& corpus) {
    std::map<std::string, std::size_t> hist;
    for (const auto& d : corpus.documents)
        for (const auto& l : d.labels) ++hist[l];
    return hist;
}

}  // namespace topicsim
