#pragma once

#include <string>
#include <vector>

namespace questlab {

/// Lowercases, splits on anything that is not [a-z0-9'], drops empties.
std::vector<std::string> tokenize(const std::string& text);

/// Lowercase + collapse runs of whitespace to single spaces + trim.
std::string normalize(const std::string& text);

std::string join(const std::vector<std::string>& tokens, const std::string& sep = " ");

/// "a" or "an" depending on the first letter of the noun phrase.
std::string article(const std::string& noun_phrase);

}  // namespace questlab
