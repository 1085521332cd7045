#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace nsm {

/// Dense row-major matrix. Small and deliberately plain: the problems here
/// are at most a few thousand rows by a few hundred columns.
class Matrix {
 public:
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> row_major);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const double> diag);
  static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

  std::span<const double> row(std::size_t r) const {
    return std::span<const double>(data_).subspan(r * cols_, cols_);
  }
  std::span<const double> data() const noexcept { return data_; }

  /// A x
  std::vector<double> multiply(std::span<const double> x) const;
  /// A^T y
  std::vector<double> multiply_transposed(std::span<const double> y) const;
  /// A^T A
  Matrix gram() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
};

}  // namespace nsm
