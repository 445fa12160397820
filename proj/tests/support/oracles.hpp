#pragma once

// Independent reference implementations used as test oracles. None of them
// call into the library under test.

#include <cstddef>
#include <string>
#include <vector>

namespace mbtr::testing {

using Rows = std::vector<std::vector<double>>;

// Plain biased TextRank: R <- a*W*R + (1-a)*b with the raw, unnormalized
// bias b, W the raw-thresholded, row-normalized cosine graph, R0 = 1/n.
// Stops when the L1 change drops below eps. Returns R / sum(R).
std::vector<double> btr_loop(const Rows& sentences, const std::vector<double>& bias, double alpha, double theta,
                             double eps, int max_iterations);

// The same graph W as btr_loop, as dense rows.
Rows thresholded_graph(const Rows& sentences, double theta);

// Exact solution of R = a*W*R + (1-a)*b by Gaussian elimination.
std::vector<double> solve_fixed_point(const Rows& graph, const std::vector<double>& bias, double alpha);

struct Counts {
  std::size_t overlap = 0;
  std::size_t candidate_total = 0;
  std::size_t reference_total = 0;
};

using TokenList = std::vector<std::string>;

// Greedy one-to-one matching of candidate n-grams against reference n-grams.
Counts brute_ngram(const TokenList& candidate, const TokenList& reference, std::size_t n);
// Longest common subsequence by enumerating every subsequence of the shorter
// input. Exponential; keep the shorter side small.
std::size_t brute_lcs(const TokenList& a, const TokenList& b);
// Unigrams plus ordered pairs (i, j) with j - i <= 5, matched greedily.
Counts brute_su4(const TokenList& candidate, const TokenList& reference);

struct Prf {
  double p = 0.0;
  double r = 0.0;
  double f = 0.0;
};
Prf prf(const Counts& counts);

}  // namespace mbtr::testing
