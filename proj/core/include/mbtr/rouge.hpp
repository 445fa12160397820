#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace mbtr {

// Conventions: lowercase alphanumeric word tokens, no stemming, no stopword
// removal, counts clipped per n-gram. Texts are scored as one token sequence.
struct RougeScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

struct OverlapCounts {
  std::size_t overlap = 0;
  std::size_t candidate_total = 0;
  std::size_t reference_total = 0;
  friend bool operator==(const OverlapCounts&, const OverlapCounts&) = default;
};

// P = overlap / candidate_total, R = overlap / reference_total (0 for an
// empty denominator), F1 = 2PR / (P + R) or 0.
RougeScore score_from_counts(const OverlapCounts& counts);

using Tokens = std::vector<std::string>;

OverlapCounts ngram_overlap(const Tokens& candidate, const Tokens& reference, std::size_t n);
std::size_t lcs_length(const Tokens& a, const Tokens& b);
OverlapCounts lcs_overlap(const Tokens& candidate, const Tokens& reference);
// Skip-bigrams whose members are at most max_skip tokens apart (pairs i < j
// with j - i <= max_skip + 1) pooled with unigrams.
OverlapCounts skip_bigram_unigram_overlap(const Tokens& candidate, const Tokens& reference,
                                          std::size_t max_skip = 4);

// All three throw kEmptyInput when the reference has no tokens.
RougeScore rouge_n(std::string_view candidate, std::string_view reference, std::size_t n);
RougeScore rouge_l(std::string_view candidate, std::string_view reference);
RougeScore rouge_su4(std::string_view candidate, std::string_view reference);

enum class RougeMetric { kRouge1, kRouge2, kRougeL, kRougeSU4 };

// Accepts r1, r2, rl, rsu4 (case-insensitive).
RougeMetric parse_rouge_metric(std::string_view name);
std::vector<RougeMetric> parse_rouge_metrics(std::string_view comma_list);
std::string_view to_string(RougeMetric metric);  // "rouge-1", ...
std::string_view short_name(RougeMetric metric);  // "R-1", ...
const std::vector<RougeMetric>& all_rouge_metrics();

RougeScore rouge(RougeMetric metric, std::string_view candidate, std::string_view reference);

}  // namespace mbtr
