#pragma once

#include <string>
#include <vector>

#include "topicsim/corpus.hpp"

namespace topicsim {

struct ReutersOptions {
    bool body_only = false;      // default concatenates title + body
    bool single_label_only = true;
};

// Parses Reuters-21578 SGML (<REUTERS NEWID=...> records) into documents.
std::vector<Document> parse_reuters_sgml(const std::string& sgml,
                                         const ReutersOptions& opts = {});

// Converts one or more .sgm files into a line-delimited corpus file.
// Returns the number of documents written.
std::size_t convert_reuters(const std::vector<std::string>& sgml_paths,
                            const std::string& out_path,
                            const ReutersOptions& opts = {});

}  // namespace topicsim
