#include "mbtr/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mbtr/error.hpp"

namespace mbtr {

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), values_(rows * cols, fill) {}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  Matrix m;
  for (const auto& r : rows) {
    std::vector<double> tmp(r);
    m.append_row(tmp);
  }
  return m;
}

Matrix Matrix::from_rows(const std::vector<Vector>& rows) {
  Matrix m;
  for (const auto& r : rows) m.append_row(r);
  return m;
}

void Matrix::append_row(std::span<const double> values) {
  if (rows_ == 0 && values_.empty()) {
    cols_ = values.size();
  } else if (values.size() != cols_) {
    throw Error(ErrorCode::kDimensionMismatch,
                "row of length " + std::to_string(values.size()) + " appended to matrix with " +
                    std::to_string(cols_) + " columns");
  }
  values_.insert(values_.end(), values.begin(), values.end());
  ++rows_;
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "dot of vectors with different lengths");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

double l2_norm(std::span<const double> v) { return std::sqrt(dot(v, v)); }

double l1_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "l1 distance of vectors with different lengths");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::abs(a[i] - b[i]);
  return acc;
}

Matrix cosine_similarity(const Matrix& u, const Matrix& v) {
  if (u.cols() == 0 || v.cols() == 0) {
    throw Error(ErrorCode::kDimensionMismatch, "cosine similarity needs at least one column");
  }
  if (u.cols() != v.cols()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "cosine similarity of " + std::to_string(u.cols()) + "- and " +
                    std::to_string(v.cols()) + "-column matrices");
  }
  const Vector u_norms = row_norms(u);
  const Vector v_norms = row_norms(v);
  Matrix out(u.rows(), v.rows());
  for (std::size_t i = 0; i < u.rows(); ++i) {
    for (std::size_t j = 0; j < v.rows(); ++j) {
      const double denom = u_norms[i] * v_norms[j];
      if (denom == 0.0) continue;
      out(i, j) = std::clamp(dot(u.row(i), v.row(j)) / denom, -1.0, 1.0);
    }
  }
  return out;
}

Vector sum_normalize(std::span<const double> u) {
  double total = 0.0;
  for (double x : u) total += x;
  if (total == 0.0 || !std::isfinite(total)) {
    throw Error(ErrorCode::kZeroSum, "cannot normalize a vector whose entries sum to zero");
  }
  Vector out(u.begin(), u.end());
  for (double& x : out) x /= total;
  return out;
}

Vector row_norms(const Matrix& m) {
  Vector out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) out[i] = l2_norm(m.row(i));
  return out;
}

}  // namespace mbtr
