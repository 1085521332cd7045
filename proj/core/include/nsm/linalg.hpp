#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "nsm/matrix.hpp"

namespace nsm::problems {

/// Lower-triangular Cholesky factor of a symmetric positive-definite matrix.
///
/// Factorization fails with NumericalError when a pivot drops below
/// 1e-12 times the largest diagonal entry; the message names that pivot.
class Cholesky {
 public:
  static Cholesky factor(const Matrix& spd);

  std::vector<double> solve(std::span<const double> rhs) const;
  std::size_t dim() const noexcept { return lower_.rows(); }
  /// Smallest pivot (squared diagonal of L) seen during factorization.
  double min_pivot() const noexcept { return min_pivot_; }

 private:
  Cholesky(Matrix lower, double min_pivot) : lower_(std::move(lower)), min_pivot_(min_pivot) {}
  Matrix lower_;
  double min_pivot_;
};

struct SingularValueExtremes {
  double sigma_max;
  double sigma_min;
};

/// Largest and smallest singular values of a full-column-rank matrix
/// (divide-and-conquer SVD). Throws NumericalError when A^T A is not
/// numerically positive definite.
SingularValueExtremes singular_value_extremes(const Matrix& a);

/// sigma_max(A) / sigma_min(A).
double condition_number(const Matrix& a);

}  // namespace nsm::problems
