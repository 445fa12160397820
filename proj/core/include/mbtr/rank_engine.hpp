#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "mbtr/numerics.hpp"

namespace mbtr {

// Fold applied across bias rows before normalization.
enum class Reduction { kSum, kMax, kMean, kMedian };

// kRaw prunes raw cosine similarities below theta and then row-normalizes.
// kLiteral row-normalizes first and prunes normalized weights below theta.
enum class ThresholdMode { kRaw, kLiteral };

Reduction parse_reduction(std::string_view name);
std::string_view to_string(Reduction reduction);
ThresholdMode parse_threshold_mode(std::string_view name);
std::string_view to_string(ThresholdMode mode);

struct RankConfig {
  double alpha = 0.1;   // weight of the graph centrality term
  double beta = 0.0;    // information-content penalty weight
  double theta = 0.65;  // similarity threshold
  int max_iterations = 100;
  double epsilon = 1e-6;  // L1 fixed-point tolerance
  Reduction reduction = Reduction::kSum;
  ThresholdMode threshold_mode = ThresholdMode::kRaw;
  bool zero_diagonal = false;

  // Throws kInvalidArgument when a field is out of range.
  void validate() const;
};

struct RankResult {
  Vector scores;  // sums to 1
  int iterations_used = 0;
  double residual = 0.0;  // |R - (alpha A R + (1 - alpha) b)|_1 of raw_scores
  bool converged = false;

  // Iterate before the final renormalization; the fixed-point residual is
  // measured on this vector.
  Vector raw_scores;
  // The normalized compound bias fed to the recursion.
  Vector compound_bias;
  // Per-bias rows after the information-content penalty, before reduction.
  std::optional<Matrix> per_bias_contributions;
};

Matrix build_adjacency(const Matrix& sentences, double theta,
                       ThresholdMode mode = ThresholdMode::kRaw, bool zero_diagonal = false);

Vector reduce_biases(const Matrix& bias_vectors, Reduction reduction);

// |‖S_i‖ - mean_j ‖G_j‖| for every sentence row.
Vector ic_distances(const Matrix& sentences, const Matrix& guide);

// Folds the penalized bias rows, clamps negatives to zero and sum-normalizes.
// Throws kClampedBias when nothing positive survives.
Vector compound_bias(const Matrix& biases, const Vector* ic_distance, double beta,
                     Reduction reduction, Matrix* penalized_rows = nullptr);

// Damped power iteration of R <- alpha * A R + (1 - alpha) * b from a uniform
// start. `biases` is q x n (one row per bias source over the n sentences);
// `guide` holds guide-summary encodings and is only read when beta > 0.
RankResult rank(const Matrix& sentences, const Matrix& biases, const Matrix* guide,
                const RankConfig& config);

// Indices of the k best scores (ties to the lower index), in source order.
std::vector<std::size_t> select_top(const RankResult& result, std::size_t k);
std::vector<std::size_t> select_top(std::span<const double> scores, std::size_t k);

// Indices sorted by descending score, ties by ascending index.
std::vector<std::size_t> rank_order(std::span<const double> scores);

}  // namespace mbtr
