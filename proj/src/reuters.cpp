#include "topicsim/reuters.hpp"

#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace topicsim {
namespace {

// Returns the body of the first <tag>...</tag> after `from`, or nullopt.
std::optional<std::string> element_text(const std::string& s, const std::string& tag,
                                        std::size_t from, std::size_t limit) {
    std::string open = "<" + tag + ">";
    std::string close = "</" + tag + ">";
    std::size_t a = s.find(open, from);
    if (a == std::string::npos || a >= limit) return std::nullopt;
    a += open.size();
    std::size_t b = s.find(close, a);
    if (b == std::string::npos || b > limit) return std::nullopt;
    return s.substr(a, b - a);
}

std::string decode_entities(const std::string& in) {
    std::string out;
    out.reserve(in.size());
    std::size_t i = 0;
    while (i < in.size()) {
        if (in[i] != '&') {
            out.push_back(in[i++]);
            continue;
        }
        std::size_t semi = in.find(';', i);
        if (semi == std::string::npos || semi - i > 8) {
            out.push_back(in[i++]);
            continue;
        }
        std::string ent = in.substr(i + 1, semi - i - 1);
        if (ent == "lt") out.push_back('<');
        else if (ent == "gt") out.push_back('>');
        else if (ent == "amp") out.push_back('&');
        else if (ent == "quot") out.push_back('"');
        else if (!ent.empty() && ent[0] == '#') {
            int code = std::atoi(ent.c_str() + 1);
            if (code >= 32 && code < 127) out.push_back(static_cast<char>(code));
            else out.push_back(' ');  // control characters become whitespace
        } else {
            out.push_back(' ');  // unknown entity
        }
        i = semi + 1;
    }
    return out;
}

std::string collapse_ws(const std::string& in) {
    std::string out;
    out.reserve(in.size());
    bool pending = false;
    for (char c : in) {
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
            pending = !out.empty();
        } else {
            if (pending) out.push_back(' ');
            pending = false;
            out.push_back(c);
        }
    }
    return out;
}

std::vector<std::string> topic_labels(const std::string& topics_body) {
    std::vector<std::string> labels;
    std::size_t pos = 0;
    while (true) {
        std::size_t a = topics_body.find("<D>", pos);
        if (a == std::string::npos) break;
        a += 3;
        std::size_t b = topics_body.find("</D>", a);
        if (b == std::string::npos) break;
        labels.push_back(topics_body.substr(a, b - a));
        pos = b + 4;
    }
    return labels;
}

}  // namespace

std::vector<Document> parse_reuters_sgml(const std::string& sgml,
                                         const ReutersOptions& opts) {
    std::vector<Document> docs;
    std::size_t pos = 0;
    while (true) {
        std::size_t start = sgml.find("<REUTERS", pos);
        if (start == std::string::npos) break;
        std::size_t end = sgml.find("</REUTERS>", start);
        if (end == std::string::npos) break;
        pos = end + 10;

        std::size_t tag_end = sgml.find('>', start);
        if (tag_end == std::string::npos || tag_end > end) continue;
        std::string attrs = sgml.substr(start, tag_end - start);
        std::size_t nid = attrs.find("NEWID=\"");
        if (nid == std::string::npos) continue;
        nid += 7;
        std::size_t nid_end = attrs.find('"', nid);
        if (nid_end == std::string::npos) continue;
        std::string newid = attrs.substr(nid, nid_end - nid);

        auto topics = element_text(sgml, "TOPICS", start, end);
        std::vector<std::string> labels = topics ? topic_labels(*topics)
                                                 : std::vector<std::string>{};
        if (opts.single_label_only && labels.size() != 1) continue;

        std::string text;
        if (!opts.body_only) {
            if (auto title = element_text(sgml, "TITLE", start, end)) text = *title;
        }
        if (auto body = element_text(sgml, "BODY", start, end)) {
            if (!text.empty()) text += " ";
            text += *body;
        }
        text = collapse_ws(decode_entities(text));
        if (text.empty()) continue;

        docs.push_back(Document{"reut-" + newid, text, labels});
    }
    return docs;
}

std::size_t convert_reuters(const std::vector<std::string>& sgml_paths,
                            const std::string& out_path,
                            const ReutersOptions& opts) {
    std::vector<Document> all;
    for (const auto& path : sgml_paths) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw std::runtime_error("cannot open " + path);
        std::ostringstream buf;
        buf << in.rdbuf();
        auto docs = parse_reuters_sgml(buf.str(), opts);
        all.insert(all.end(), docs.begin(), docs.end());
    }
    Corpus corpus = corpus_from_documents(std::move(all));
    save_corpus(corpus, out_path);
    return corpus.documents.size();
}

}  // namespace topicsim
