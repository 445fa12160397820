#pragma once

#include <span>
#include <string_view>

namespace mbtr {

// Fixed English stopword list (v1, 179 entries, NLTK-compatible contents).
std::span<const std::string_view> english_stopwords();

// `word` must already be lowercased.
bool is_stopword(std::string_view word);

// True when every word token of `term` is a stopword, or it has none.
bool is_stopword_only(std::string_view term);

}  // namespace mbtr
