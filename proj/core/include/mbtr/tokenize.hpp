#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace mbtr {

// Lowercased maximal runs of ASCII alphanumerics (bytes >= 0x80 count as word
// characters so UTF-8 letters stay inside tokens).
std::vector<std::string> word_tokens(std::string_view text);

std::string to_lower(std::string_view text);

// Lowercase, trim, and collapse internal whitespace runs to one space.
std::string normalize_phrase(std::string_view text);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

bool is_word_char(char c);

}  // namespace mbtr
