#include "mbtr/rouge.hpp"

#include <algorithm>
#include <map>

#include "mbtr/error.hpp"
#include "mbtr/tokenize.hpp"

namespace mbtr {
namespace {

using Counter = std::map<std::vector<std::string_view>, std::size_t>;

std::size_t clipped_overlap(const Counter& candidate, const Counter& reference) {
  std::size_t overlap = 0;
  for (const auto& [gram, count] : candidate) {
    if (auto it = reference.find(gram); it != reference.end()) overlap += std::min(count, it->second);
  }
  return overlap;
}

Counter ngrams(const Tokens& tokens, std::size_t n) {
  Counter out;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    out[std::vector<std::string_view>(tokens.begin() + static_cast<std::ptrdiff_t>(i),
                                      tokens.begin() + static_cast<std::ptrdiff_t>(i + n))] += 1;
  }
  return out;
}

Counter skip_bigrams_and_unigrams(const Tokens& tokens, std::size_t max_skip) {
  Counter out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    out[{tokens[i]}] += 1;
    for (std::size_t j = i + 1; j < tokens.size() && j - i <= max_skip + 1; ++j) {
      out[{tokens[i], tokens[j]}] += 1;
    }
  }
  return out;
}

std::size_t total(const Counter& c) {
  std::size_t t = 0;
  for (const auto& [gram, count] : c) t += count;
  return t;
}

Tokens reference_tokens(std::string_view reference) {
  Tokens tokens = word_tokens(reference);
  if (tokens.empty()) throw Error(ErrorCode::kEmptyInput, "ROUGE reference has no tokens");
  return tokens;
}

}  // namespace

RougeScore score_from_counts(const OverlapCounts& counts) {
  RougeScore s;
  if (counts.candidate_total > 0) {
    s.precision = static_cast<double>(counts.overlap) / static_cast<double>(counts.candidate_total);
  }
  if (counts.reference_total > 0) {
    s.recall = static_cast<double>(counts.overlap) / static_cast<double>(counts.reference_total);
  }
  if (s.precision + s.recall > 0.0) s.f1 = 2.0 * s.precision * s.recall / (s.precision + s.recall);
  return s;
}

OverlapCounts ngram_overlap(const Tokens& candidate, const Tokens& reference, std::size_t n) {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "ROUGE-N needs n >= 1");
  const Counter c = ngrams(candidate, n);
  const Counter r = ngrams(reference, n);
  return {clipped_overlap(c, r), total(c), total(r)};
}

std::size_t lcs_length(const Tokens& a, const Tokens& b) {
  std::vector<std::size_t> prev(b.size() + 1, 0);
  std::vector<std::size_t> cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

OverlapCounts lcs_overlap(const Tokens& candidate, const Tokens& reference) {
  return {lcs_length(candidate, reference), candidate.size(), reference.size()};
}

OverlapCounts skip_bigram_unigram_overlap(const Tokens& candidate, const Tokens& reference,
                                          std::size_t max_skip) {
  const Counter c = skip_bigrams_and_unigrams(candidate, max_skip);
  const Counter r = skip_bigrams_and_unigrams(reference, max_skip);
  return {clipped_overlap(c, r), total(c), total(r)};
}

RougeScore rouge_n(std::string_view candidate, std::string_view reference, std::size_t n) {
  const Tokens ref = reference_tokens(reference);
  return score_from_counts(ngram_overlap(word_tokens(candidate), ref, n));
}

RougeScore rouge_l(std::string_view candidate, std::string_view reference) {
  const Tokens ref = reference_tokens(reference);
  return score_from_counts(lcs_overlap(word_tokens(candidate), ref));
}

RougeScore rouge_su4(std::string_view candidate, std::string_view reference) {
  const Tokens ref = reference_tokens(reference);
  return score_from_counts(skip_bigram_unigram_overlap(word_tokens(candidate), ref, 4));
}

RougeMetric parse_rouge_metric(std::string_view name) {
  const std::string n = to_lower(name);
  if (n == "r1" || n == "rouge-1") return RougeMetric::kRouge1;
  if (n == "r2" || n == "rouge-2") return RougeMetric::kRouge2;
  if (n == "rl" || n == "rouge-l") return RougeMetric::kRougeL;
  if (n == "rsu4" || n == "rouge-su4") return RougeMetric::kRougeSU4;
  throw Error(ErrorCode::kInvalidArgument, "unknown ROUGE metric '" + std::string(name) + "'");
}

std::vector<RougeMetric> parse_rouge_metrics(std::string_view comma_list) {
  std::vector<RougeMetric> out;
  std::size_t start = 0;
  while (start <= comma_list.size()) {
    const auto end = std::min(comma_list.find(',', start), comma_list.size());
    const auto item = comma_list.substr(start, end - start);
    if (!item.empty()) {
      const auto m = parse_rouge_metric(item);
      if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
    }
    start = end + 1;
  }
  if (out.empty()) throw Error(ErrorCode::kInvalidArgument, "no ROUGE metrics selected");
  return out;
}

std::string_view to_string(RougeMetric metric) {
  switch (metric) {
    case RougeMetric::kRouge1: return "rouge-1";
    case RougeMetric::kRouge2: return "rouge-2";
    case RougeMetric::kRougeL: return "rouge-l";
    case RougeMetric::kRougeSU4: return "rouge-su4";
  }
  return "rouge-1";
}

std::string_view short_name(RougeMetric metric) {
  switch (metric) {
    case RougeMetric::kRouge1: return "R-1";
    case RougeMetric::kRouge2: return "R-2";
    case RougeMetric::kRougeL: return "R-L";
    case RougeMetric::kRougeSU4: return "R-SU4";
  }
  return "R-1";
}

const std::vector<RougeMetric>& all_rouge_metrics() {
  static const std::vector<RougeMetric> metrics = {RougeMetric::kRouge1, RougeMetric::kRouge2,
                                                   RougeMetric::kRougeL, RougeMetric::kRougeSU4};
  return metrics;
}

RougeScore rouge(RougeMetric metric, std::string_view candidate, std::string_view reference) {
  switch (metric) {
    case RougeMetric::kRouge1: return rouge_n(candidate, reference, 1);
    case RougeMetric::kRouge2: return rouge_n(candidate, reference, 2);
    case RougeMetric::kRougeL: return rouge_l(candidate, reference);
    case RougeMetric::kRougeSU4: return rouge_su4(candidate, reference);
  }
  return {};
}

}  // namespace mbtr
