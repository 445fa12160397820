#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mbtr/text_types.hpp"

namespace mbtr {

// Token-level pattern matching in the style of rule-based matchers: each
// element is a predicate with a quantifier.
enum class Quantifier { kOne, kOptional, kOneOrMore, kZeroOrMore };

struct TokenPatternElement {
  std::function<bool(const AnnotatedToken&)> predicate;  // empty = wildcard
  Quantifier quantifier = Quantifier::kOne;
};

using TokenPattern = std::vector<TokenPatternElement>;

// Wildcard, optional AUX, optional negation (dep == "neg"), one or more VERB,
// any number of ADV, one or more ADJ.
const TokenPattern& verb_phrase_pattern();

// Length of the longest match of `pattern` starting at `start`, if any.
std::optional<std::size_t> longest_match_at(std::span<const AnnotatedToken> tokens,
                                            const TokenPattern& pattern, std::size_t start);

// Leftmost-longest, non-overlapping matches.
std::vector<TokenSpan> find_matches(std::span<const AnnotatedToken> tokens, const TokenPattern& pattern);

}  // namespace mbtr
