#pragma once

#include <string>
#include <vector>

namespace topicsim {

// Porter's 1980 suffix-stripping algorithm. Input is expected to be a
// lowercase ASCII token; anything shorter than 3 characters passes through.
std::string porter_stem(const std::string& word);

std::vector<std::string> stem_tokens(const std::vector<std::string>& tokens);

}  // namespace topicsim
