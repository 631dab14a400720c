#include "topicsim/preprocess.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>

#include "topicsim/stemmer.hpp"

namespace topicsim {

void PreprocessConfig::validate() const {
    if (min_token_length < 1)
        throw PreprocessError("min_token_length must be >= 1");
    if (rare_df_threshold && (*rare_df_threshold < 0.0 || *rare_df_threshold > 1.0))
        throw PreprocessError("rare_df_threshold out of [0,1]");
    if (ubiquitous_df_threshold &&
        (*ubiquitous_df_threshold < 0.0 || *ubiquitous_df_threshold > 1.0))
        throw PreprocessError("ubiquitous_df_threshold out of [0,1]");
    if (rare_df_threshold && ubiquitous_df_threshold &&
        !(*rare_df_threshold < *ubiquitous_df_threshold))
        throw PreprocessError("rare_df_threshold must be below ubiquitous_df_threshold");
    for (const auto& t : stop_additions)
        if (std::find(stop_removals.begin(), stop_removals.end(), t) !=
            stop_removals.end())
            throw PreprocessError("term in both stop_additions and stop_removals: " + t);
}

std::set<std::string> effective_stop_list(const PreprocessConfig& config) {
    std::set<std::string> list;
    if (!config.remove_stop_terms) return list;
    const auto& base =
        config.stop_list_override ? *config.stop_list_override : default_stop_list();
    list.insert(base.begin(), base.end());
    list.insert(config.stop_additions.begin(), config.stop_additions.end());
    for (const auto& t : config.stop_removals) list.erase(t);
    return list;
}

std::vector<std::string> tokenize(const std::string& text,
                                  const PreprocessConfig& config) {
    std::vector<std::string> tokens;
    std::string cur;
    auto flush = [&] {
        if (cur.empty()) return;
        bool keep = static_cast<int>(cur.size()) >= config.min_token_length;
        if (keep && config.drop_numeric_tokens) {
            bool all_digit = std::all_of(cur.begin(), cur.end(), [](unsigned char c) {
                return std::isdigit(c);
            });
            if (all_digit) keep = false;
        }
        if (keep) tokens.push_back(cur);
        cur.clear();
    };
    for (unsigned char c : text) {
        if (std::isalnum(c)) {
            cur.push_back(static_cast<char>(std::tolower(c)));
        } else {
            flush();
        }
    }
    flush();
    return tokens;
}

std::vector<std::string> apply_stop_filter(const std::vector<std::string>& tokens,
                                           const std::set<std::string>& stoplist) {
    if (stoplist.empty()) return tokens;
    std::vector<std::string> out;
    out.reserve(tokens.size());
    for (const auto& t : tokens)
        if (!stoplist.count(t)) out.push_back(t);
    return out;
}

std::vector<std::vector<std::string>> tokenize_corpus(const Corpus& corpus,
                                                      const PreprocessConfig& config) {
    config.validate();
    const auto stoplist = effective_stop_list(config);
    std::vector<std::vector<std::string>> lists;
    lists.reserve(corpus.size());
    for (const auto& doc : corpus.documents) {
        auto tokens = apply_stop_filter(tokenize(doc.text, config), stoplist);
        if (config.stem) tokens = stem_tokens(tokens);
        lists.push_back(std::move(tokens));
    }
    return lists;
}

Vocabulary build_vocabulary(const std::vector<std::vector<std::string>>& token_lists,
                            const PreprocessConfig& config) {
    const std::size_t n = token_lists.size();
    std::map<std::string, std::size_t> df;  // ordered -> lexicographic terms
    for (const auto& tokens : token_lists) {
        std::set<std::string> seen(tokens.begin(), tokens.end());
        for (const auto& t : seen) ++df[t];
    }

    Vocabulary vocab;
    for (const auto& [term, count] : df) {
        double frac = n ? static_cast<double>(count) / static_cast<double>(n) : 0.0;
        if (config.rare_df_threshold && frac < *config.rare_df_threshold) continue;
        if (config.ubiquitous_df_threshold && frac > *config.ubiquitous_df_threshold)
            continue;
        vocab.index.emplace(term, vocab.terms.size());
        vocab.terms.push_back(term);
        vocab.doc_frequency.push_back(count);
    }
    if (vocab.terms.empty()) throw PreprocessError("empty vocabulary");
    return vocab;
}

double idf(std::size_t n_docs, std::size_t df) {
    return std::log(static_cast<double>(1 + n_docs) / static_cast<double>(1 + df)) + 1.0;
}

DocumentTermMatrix vectorize(const Corpus& corpus,
                             const std::vector<std::vector<std::string>>& token_lists,
                             const Vocabulary& vocab,
                             const PreprocessConfig& config) {
    if (vocab.size() == 0) throw PreprocessError("vectorize: empty vocabulary");
    DocumentTermMatrix dtm;
    dtm.vocab = vocab;

    std::vector<double> idf_cache(vocab.size());
    for (std::size_t j = 0; j < vocab.size(); ++j)
        idf_cache[j] = idf(corpus.size(), vocab.doc_frequency[j]);

    for (std::size_t d = 0; d < corpus.size(); ++d) {
        std::map<std::size_t, double> row;  // ordered -> sorted cols
        for (const auto& t : token_lists[d]) {
            auto it = vocab.index.find(t);
            if (it != vocab.index.end()) row[it->second] += 1.0;
        }
        if (row.empty()) {
            dtm.dropped_docs.push_back(corpus.documents[d].id);
            continue;
        }
        SparseRow counts, weights;
        for (const auto& [col, cnt] : row) {
            counts.cols.push_back(col);
            counts.values.push_back(cnt);
            weights.cols.push_back(col);
            weights.values.push_back(config.weighting == Weighting::TfIdf
                                         ? cnt * idf_cache[col]
                                         : cnt);
        }
        dtm.row_ids.push_back(corpus.documents[d].id);
        dtm.counts.push_back(std::move(counts));
        dtm.weights.push_back(std::move(weights));
    }
    if (dtm.row_ids.empty())
        throw PreprocessError("every document empty after filtering");
    return dtm;
}

DocumentTermMatrix preprocess_corpus(const Corpus& corpus,
                                     const PreprocessConfig& config) {
    auto token_lists = tokenize_corpus(corpus, config);
    auto vocab = build_vocabulary(token_lists, config);
    return vectorize(corpus, token_lists, vocab, config);
}

std::uint64_t DocumentTermMatrix::digest() const {
    // FNV-1a over the full structural content
    std::uint64_t h = 1469598103934665603ULL;
    auto mix_bytes = [&h](const void* data, std::size_t len) {
        const auto* p = static_cast<const unsigned char*>(data);
        for (std::size_t i = 0; i < len; ++i) {
            h ^= p[i];
            h *= 1099511628211ULL;
        }
    };
    auto mix_str = [&](const std::string& s) { mix_bytes(s.data(), s.size()); };
    for (const auto& id : row_ids) mix_str(id);
    for (const auto& t : vocab.terms) mix_str(t);
    for (const auto& row : counts) {
        for (auto c : row.cols) mix_bytes(&c, sizeof c);
        for (auto v : row.values) mix_bytes(&v, sizeof v);
    }
    for (const auto& row : weights)
        for (auto v : row.values) mix_bytes(&v, sizeof v);
    for (const auto& id : dropped_docs) mix_str(id);
    return h;
}

std::vector<std::string> load_stop_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw PreprocessError("cannot open stop list file: " + path);
    std::vector<std::string> terms;
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
            line.pop_back();
        if (!line.empty()) terms.push_back(line);
    }
    return terms;
}

}  // namespace topicsim
