#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace mbtr {

using Vector = std::vector<double>;

// Dense row-major matrix of doubles. Rows are sentence/phrase/query encodings
// or bias rows; columns are embedding dimensions or sentence indices.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);

  static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows);
  static Matrix from_rows(const std::vector<Vector>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0; }

  double& operator()(std::size_t r, std::size_t c) { return values_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return values_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) { return {values_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const { return {values_.data() + r * cols_, cols_}; }

  // Appends a row; the first row appended to an empty 0x0 matrix fixes cols.
  void append_row(std::span<const double> values);

  std::span<const double> values() const noexcept { return values_; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> values_;
};

double dot(std::span<const double> a, std::span<const double> b);
double l2_norm(std::span<const double> v);
double l1_distance(std::span<const double> a, std::span<const double> b);

// out[i][j] = <U_i, V_j> / (|U_i| |V_j|), clamped to [-1, 1]. A zero-norm row
// on either side yields 0 instead of an error so degenerate sentences do not
// abort a batch.
Matrix cosine_similarity(const Matrix& u, const Matrix& v);

// u / sum(u). Throws kZeroSum when the sum is zero (or not finite).
Vector sum_normalize(std::span<const double> u);

Vector row_norms(const Matrix& m);

}  // namespace mbtr
