#include "oracles.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace mbtr::testing {

namespace {

double cosine(const std::vector<double>& a, const std::vector<double>& b) {
  double ab = 0, aa = 0, bb = 0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    ab += a[k] * b[k];
    aa += a[k] * a[k];
    bb += b[k] * b[k];
  }
  if (aa == 0 || bb == 0) return 0.0;
  return ab / (std::sqrt(aa) * std::sqrt(bb));
}

using Gram = std::vector<std::string>;

Counts greedy_match(const std::vector<Gram>& candidate, const std::vector<Gram>& reference) {
  Counts c{0, candidate.size(), reference.size()};
  std::vector<bool> used(reference.size(), false);
  for (const auto& g : candidate) {
    for (std::size_t j = 0; j < reference.size(); ++j) {
      if (!used[j] && reference[j] == g) {
        used[j] = true;
        ++c.overlap;
        break;
      }
    }
  }
  return c;
}

std::vector<Gram> su4_grams(const TokenList& t) {
  std::vector<Gram> out;
  for (std::size_t i = 0; i < t.size(); ++i) out.push_back({t[i]});
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = i + 1; j < t.size(); ++j)
      if (j - i <= 5) out.push_back({t[i], t[j]});
  return out;
}

bool is_subsequence(const TokenList& needle, const TokenList& hay) {
  std::size_t k = 0;
  for (std::size_t i = 0; i < hay.size() && k < needle.size(); ++i)
    if (hay[i] == needle[k]) ++k;
  return k == needle.size();
}

}  // namespace

Rows thresholded_graph(const Rows& s, double theta) {
  const std::size_t n = s.size();
  Rows w(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    double total = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const double c = cosine(s[i], s[j]);
      if (c >= theta) {
        w[i][j] = c;
        total += c;
      }
    }
    if (total > 0)
      for (auto& x : w[i]) x /= total;
  }
  return w;
}

std::vector<double> btr_loop(const Rows& s, const std::vector<double>& bias, double alpha, double theta,
                             double eps, int max_iterations) {
  const std::size_t n = s.size();
  const Rows w = thresholded_graph(s, theta);
  std::vector<double> r(n, 1.0 / static_cast<double>(n));
  for (int it = 0; it < max_iterations; ++it) {
    std::vector<double> next(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      double acc = 0;
      for (std::size_t j = 0; j < n; ++j) acc += w[i][j] * r[j];
      next[i] = alpha * acc + (1 - alpha) * bias[i];
    }
    double change = 0;
    for (std::size_t i = 0; i < n; ++i) change += std::abs(next[i] - r[i]);
    r = std::move(next);
    if (change < eps) break;
  }
  double total = 0;
  for (double x : r) total += x;
  for (auto& x : r) x /= total;
  return r;
}

std::vector<double> solve_fixed_point(const Rows& w, const std::vector<double>& b, double alpha) {
  // (I - a W) R = (1 - a) b
  const std::size_t n = w.size();
  Rows m(n, std::vector<double>(n + 1, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i][j] = (i == j ? 1.0 : 0.0) - alpha * w[i][j];
    m[i][n] = (1 - alpha) * b[i];
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(m[r][c]) > std::abs(m[pivot][c])) pivot = r;
    if (std::abs(m[pivot][c]) < 1e-300) throw std::runtime_error("singular system");
    std::swap(m[c], m[pivot]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      const double f = m[r][c] / m[c][c];
      for (std::size_t k = c; k <= n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = m[i][n] / m[i][i];
  return x;
}

Counts brute_ngram(const TokenList& candidate, const TokenList& reference, std::size_t n) {
  auto grams = [n](const TokenList& t) {
    std::vector<Gram> out;
    for (std::size_t i = 0; i + n <= t.size(); ++i) out.emplace_back(t.begin() + i, t.begin() + i + n);
    return out;
  };
  return greedy_match(grams(candidate), grams(reference));
}

std::size_t brute_lcs(const TokenList& a, const TokenList& b) {
  const TokenList& shorter = a.size() <= b.size() ? a : b;
  const TokenList& longer = a.size() <= b.size() ? b : a;
  if (shorter.size() > 20) throw std::invalid_argument("brute_lcs input too long");
  std::size_t best = 0;
  const std::size_t subsets = std::size_t{1} << shorter.size();
  for (std::size_t mask = 0; mask < subsets; ++mask) {
    const auto bits = static_cast<std::size_t>(__builtin_popcountll(mask));
    if (bits <= best) continue;
    TokenList pick;
    for (std::size_t i = 0; i < shorter.size(); ++i)
      if (mask & (std::size_t{1} << i)) pick.push_back(shorter[i]);
    if (is_subsequence(pick, longer)) best = bits;
  }
  return best;
}

Counts brute_su4(const TokenList& candidate, const TokenList& reference) {
  return greedy_match(su4_grams(candidate), su4_grams(reference));
}

Prf prf(const Counts& c) {
  Prf out;
  if (c.candidate_total) out.p = static_cast<double>(c.overlap) / static_cast<double>(c.candidate_total);
  if (c.reference_total) out.r = static_cast<double>(c.overlap) / static_cast<double>(c.reference_total);
  if (out.p + out.r > 0) out.f = 2 * out.p * out.r / (out.p + out.r);
  return out;
}

}  // namespace mbtr::testing
