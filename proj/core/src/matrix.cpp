#include "nsm/matrix.hpp"

#include <string>

#include "nsm/error.hpp"
#include "nsm/vector.hpp"

namespace nsm {

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> row_major)
    : rows_(rows), cols_(cols), data_(std::move(row_major)) {
  if (data_.size() != rows_ * cols_) {
    throw DimensionError("Matrix: expected " + std::to_string(rows_ * cols_) + " entries, got " +
                         std::to_string(data_.size()));
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const double> diag) {
  Matrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  std::vector<double> data;
  data.reserve(r * c);
  for (const auto& row : rows) {
    if (row.size() != c) throw DimensionError("Matrix::from_rows: ragged rows");
    data.insert(data.end(), row.begin(), row.end());
  }
  return Matrix(r, c, std::move(data));
}

std::vector<double> Matrix::multiply(std::span<const double> x) const {
  require_same_dim(x.size(), cols_, "Matrix::multiply");
  std::vector<double> out(rows_, 0.0);
  for (std::size_t r = 0; r < rows_; ++r) {
    const double* a = data_.data() + r * cols_;
    double sum = 0.0;
    for (std::size_t c = 0; c < cols_; ++c) sum += a[c] * x[c];
    out[r] = sum;
  }
  return out;
}

std::vector<double> Matrix::multiply_transposed(std::span<const double> y) const {
  require_same_dim(y.size(), rows_, "Matrix::multiply_transposed");
  std::vector<double> out(cols_, 0.0);
  for (std::size_t r = 0; r < rows_; ++r) {
    const double* a = data_.data() + r * cols_;
    const double yr = y[r];
    for (std::size_t c = 0; c < cols_; ++c) out[c] += a[c] * yr;
  }
  return out;
}

Matrix Matrix::gram() const {
  Matrix g(cols_, cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    const double* a = data_.data() + r * cols_;
    for (std::size_t i = 0; i < cols_; ++i) {
      const double ai = a[i];
      for (std::size_t j = i; j < cols_; ++j) g(i, j) += ai * a[j];
    }
  }
  for (std::size_t i = 0; i < cols_; ++i) {
    for (std::size_t j = 0; j < i; ++j) g(i, j) = g(j, i);
  }
  return g;
}

}  // namespace nsm
