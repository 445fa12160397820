#include "mbtr/rank_engine.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "mbtr/error.hpp"

namespace mbtr {

Reduction parse_reduction(std::string_view name) {
  if (name == "sum") return Reduction::kSum;
  if (name == "max") return Reduction::kMax;
  if (name == "mean") return Reduction::kMean;
  if (name == "median") return Reduction::kMedian;
  throw Error(ErrorCode::kInvalidArgument, "unknown reduction '" + std::string(name) + "'");
}

std::string_view to_string(Reduction reduction) {
  switch (reduction) {
    case Reduction::kSum: return "sum";
    case Reduction::kMax: return "max";
    case Reduction::kMean: return "mean";
    case Reduction::kMedian: return "median";
  }
  return "sum";
}

ThresholdMode parse_threshold_mode(std::string_view name) {
  if (name == "raw") return ThresholdMode::kRaw;
  if (name == "literal") return ThresholdMode::kLiteral;
  throw Error(ErrorCode::kInvalidArgument, "unknown threshold mode '" + std::string(name) + "'");
}

std::string_view to_string(ThresholdMode mode) {
  return mode == ThresholdMode::kRaw ? "raw" : "literal";
}

void RankConfig::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::kInvalidArgument, what); };
  if (!(alpha >= 0.0 && alpha <= 1.0)) fail("alpha must lie in [0, 1]");
  if (!(beta >= 0.0) || !std::isfinite(beta)) fail("beta must be >= 0");
  if (!(theta >= 0.0 && theta <= 1.0)) fail("theta must lie in [0, 1]");
  if (max_iterations < 1) fail("max_iterations must be positive");
  if (!(epsilon > 0.0)) fail("epsilon must be > 0");
}

Matrix build_adjacency(const Matrix& sentences, double theta, ThresholdMode mode,
                       bool zero_diagonal) {
  if (sentences.rows() == 0) {
    throw Error(ErrorCode::kEmptyInput, "adjacency needs at least one sentence");
  }
  Matrix a = cosine_similarity(sentences, sentences);
  const std::size_t n = a.rows();
  if (zero_diagonal) {
    for (std::size_t i = 0; i < n; ++i) a(i, i) = 0.0;
  }

  auto prune = [&](std::size_t i) {
    for (double& x : a.row(i)) {
      if (x < theta) x = 0.0;
    }
  };
  auto normalize = [&](std::size_t i) {
    auto row = a.row(i);
    const double total = std::accumulate(row.begin(), row.end(), 0.0);
    if (total == 0.0) {
      std::fill(row.begin(), row.end(), 0.0);
      return;
    }
    for (double& x : row) x /= total;
  };

  for (std::size_t i = 0; i < n; ++i) {
    if (mode == ThresholdMode::kRaw) {
      prune(i);
      normalize(i);
    } else {
      normalize(i);
      prune(i);
    }
  }
  return a;
}

Vector reduce_biases(const Matrix& bias_vectors, Reduction reduction) {
  const std::size_t q = bias_vectors.rows();
  if (q == 0) throw Error(ErrorCode::kEmptyInput, "reduction over zero bias vectors");
  const std::size_t n = bias_vectors.cols();
  Vector out(n, 0.0);
  std::vector<double> column(q);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < q; ++i) column[i] = bias_vectors(i, j);
    switch (reduction) {
      case Reduction::kSum:
        out[j] = std::accumulate(column.begin(), column.end(), 0.0);
        break;
      case Reduction::kMax:
        out[j] = *std::max_element(column.begin(), column.end());
        break;
      case Reduction::kMean:
        out[j] = std::accumulate(column.begin(), column.end(), 0.0) / static_cast<double>(q);
        break;
      case Reduction::kMedian: {
        std::sort(column.begin(), column.end());
        out[j] = q % 2 == 1 ? column[q / 2] : 0.5 * (column[q / 2 - 1] + column[q / 2]);
        break;
      }
    }
  }
  return out;
}

Vector ic_distances(const Matrix& sentences, const Matrix& guide) {
  if (guide.rows() == 0) {
    throw Error(ErrorCode::kEmptyInput, "information-content target needs at least one guide row");
  }
  if (sentences.rows() > 0 && sentences.cols() != guide.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "sentence and guide encodings differ in dimension");
  }
  const Vector guide_norms = row_norms(guide);
  const double target =
      std::accumulate(guide_norms.begin(), guide_norms.end(), 0.0) / static_cast<double>(guide_norms.size());
  Vector out = row_norms(sentences);
  for (double& x : out) x = std::abs(x - target);
  return out;
}

Vector compound_bias(const Matrix& biases, const Vector* ic_distance, double beta,
                     Reduction reduction, Matrix* penalized_rows) {
  Matrix penalized = biases;
  if (beta > 0.0) {
    if (ic_distance == nullptr || ic_distance->size() != biases.cols()) {
      throw Error(ErrorCode::kDimensionMismatch, "information-content distances do not cover every sentence");
    }
    for (std::size_t i = 0; i < penalized.rows(); ++i) {
      auto row = penalized.row(i);
      for (std::size_t j = 0; j < row.size(); ++j) row[j] -= beta * (*ic_distance)[j];
    }
  }
  Vector folded = reduce_biases(penalized, reduction);
  bool any_positive = false;
  for (double& x : folded) {
    if (!(x > 0.0)) x = 0.0;
    any_positive = any_positive || x > 0.0;
  }
  if (!any_positive) {
    throw Error(ErrorCode::kClampedBias,
                "compound bias is all zero after clamping negative entries to zero");
  }
  if (penalized_rows != nullptr) *penalized_rows = std::move(penalized);
  return sum_normalize(folded);
}

namespace {

// alpha * A r + (1 - alpha) * b
Vector step(const Matrix& adjacency, const Vector& r, const Vector& b, double alpha) {
  const std::size_t n = r.size();
  Vector next(n);
  for (std::size_t i = 0; i < n; ++i) {
    next[i] = alpha * dot(adjacency.row(i), r) + (1.0 - alpha) * b[i];
  }
  return next;
}

}  // namespace

RankResult rank(const Matrix& sentences, const Matrix& biases, const Matrix* guide,
                const RankConfig& config) {
  config.validate();
  const std::size_t n = sentences.rows();
  if (n == 0) throw Error(ErrorCode::kEmptyInput, "nothing to rank");
  if (biases.rows() == 0) throw Error(ErrorCode::kEmptyInput, "rank needs at least one bias row");
  if (biases.cols() != n) {
    throw Error(ErrorCode::kDimensionMismatch,
                "bias rows have length " + std::to_string(biases.cols()) + " but there are " +
                    std::to_string(n) + " sentences");
  }

  RankResult result;
  Vector delta;
  if (config.beta > 0.0) {
    if (guide == nullptr) {
      throw Error(ErrorCode::kInvalidArgument, "beta > 0 requires guide encodings");
    }
    delta = ic_distances(sentences, *guide);
  }
  Matrix penalized;
  result.compound_bias = compound_bias(biases, config.beta > 0.0 ? &delta : nullptr, config.beta,
                                       config.reduction, &penalized);
  result.per_bias_contributions = std::move(penalized);

  const Matrix adjacency =
      build_adjacency(sentences, config.theta, config.threshold_mode, config.zero_diagonal);

  Vector r(n, 1.0 / static_cast<double>(n));
  for (int it = 1; it <= config.max_iterations; ++it) {
    Vector next = step(adjacency, r, result.compound_bias, config.alpha);
    const double change = l1_distance(next, r);
    result.iterations_used = it;
    result.residual = change;
    if (change < config.epsilon) {
      result.converged = true;
      break;
    }
    r = std::move(next);
  }
  if (!result.converged) {
    result.residual = l1_distance(step(adjacency, r, result.compound_bias, config.alpha), r);
  }

  const double total = std::accumulate(r.begin(), r.end(), 0.0);
  if (!(total > 0.0) || !std::isfinite(total)) {
    throw Error(ErrorCode::kZeroSum, "rank vector lost all mass");
  }
  result.raw_scores = r;
  if (total != 1.0) {
    for (double& x : r) x /= total;
  }
  result.scores = std::move(r);
  return result;
}

std::vector<std::size_t> rank_order(std::span<const double> scores) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  return order;
}

std::vector<std::size_t> select_top(std::span<const double> scores, std::size_t k) {
  if (k < 1 || k > scores.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "k = " + std::to_string(k) + " outside [1, " + std::to_string(scores.size()) + "]");
  }
  std::vector<std::size_t> top = rank_order(scores);
  top.resize(k);
  std::sort(top.begin(), top.end());
  return top;
}

std::vector<std::size_t> select_top(const RankResult& result, std::size_t k) {
  return select_top(result.scores, k);
}

}  // namespace mbtr
