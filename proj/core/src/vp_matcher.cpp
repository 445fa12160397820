#include "mbtr/vp_matcher.hpp"

namespace mbtr {
namespace {

bool element_accepts(const TokenPatternElement& e, const AnnotatedToken& t) {
  return !e.predicate || e.predicate(t);
}

// Collects every end position reachable from (element, position).
void match_from(std::span<const AnnotatedToken> tokens, const TokenPattern& pattern,
                std::size_t element, std::size_t pos, std::optional<std::size_t>& best) {
  if (element == pattern.size()) {
    if (!best || pos > *best) best = pos;
    return;
  }
  const auto& e = pattern[element];
  const bool optional = e.quantifier == Quantifier::kOptional || e.quantifier == Quantifier::kZeroOrMore;
  const bool repeat = e.quantifier == Quantifier::kOneOrMore || e.quantifier == Quantifier::kZeroOrMore;

  if (optional) match_from(tokens, pattern, element + 1, pos, best);
  std::size_t p = pos;
  while (p < tokens.size() && element_accepts(e, tokens[p])) {
    ++p;
    match_from(tokens, pattern, element + 1, p, best);
    if (!repeat) break;
  }
}

}  // namespace

const TokenPattern& verb_phrase_pattern() {
  static const TokenPattern pattern = {
      {nullptr, Quantifier::kOne},
      {[](const AnnotatedToken& t) { return t.pos == "AUX"; }, Quantifier::kOptional},
      {[](const AnnotatedToken& t) { return t.dep == "neg"; }, Quantifier::kOptional},
      {[](const AnnotatedToken& t) { return t.pos == "VERB"; }, Quantifier::kOneOrMore},
      {[](const AnnotatedToken& t) { return t.pos == "ADV"; }, Quantifier::kZeroOrMore},
      {[](const AnnotatedToken& t) { return t.pos == "ADJ"; }, Quantifier::kOneOrMore},
  };
  return pattern;
}

std::optional<std::size_t> longest_match_at(std::span<const AnnotatedToken> tokens,
                                            const TokenPattern& pattern, std::size_t start) {
  std::optional<std::size_t> best_end;
  match_from(tokens, pattern, 0, start, best_end);
  if (!best_end || *best_end == start) return std::nullopt;
  return *best_end - start;
}

std::vector<TokenSpan> find_matches(std::span<const AnnotatedToken> tokens, const TokenPattern& pattern) {
  std::vector<TokenSpan> out;
  std::size_t start = 0;
  while (start < tokens.size()) {
    if (auto len = longest_match_at(tokens, pattern, start)) {
      out.push_back({start, start + *len});
      start += *len;
    } else {
      ++start;
    }
  }
  return out;
}

}  // namespace mbtr
