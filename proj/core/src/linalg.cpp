#include "nsm/linalg.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "nsm/error.hpp"
#include "nsm/vector.hpp"

namespace nsm::problems {

Cholesky Cholesky::factor(const Matrix& spd) {
  const std::size_t n = spd.rows();
  if (n == 0 || spd.cols() != n) throw DimensionError("Cholesky: matrix must be square and non-empty");

  double max_diag = 0.0;
  for (std::size_t i = 0; i < n; ++i) max_diag = std::max(max_diag, spd(i, i));
  const double threshold = 1e-12 * max_diag;

  Matrix lower(n, n);
  double min_pivot = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < n; ++j) {
    double pivot = spd(j, j);
    for (std::size_t k = 0; k < j; ++k) pivot -= lower(j, k) * lower(j, k);
    min_pivot = std::min(min_pivot, pivot);
    if (!(pivot >= threshold) || !(pivot > 0.0)) {
      std::ostringstream os;
      os.precision(17);
      os << "Cholesky: matrix is not positive definite; smallest pivot " << pivot << " at index "
         << j << " (threshold " << threshold << ")";
      throw NumericalError(os.str());
    }
    const double ljj = std::sqrt(pivot);
    lower(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = spd(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= lower(i, k) * lower(j, k);
      lower(i, j) = s / ljj;
    }
  }
  return Cholesky(std::move(lower), min_pivot);
}

std::vector<double> Cholesky::solve(std::span<const double> rhs) const {
  const std::size_t n = dim();
  require_same_dim(rhs.size(), n, "Cholesky::solve");
  std::vector<double> z(rhs.begin(), rhs.end());
  for (std::size_t i = 0; i < n; ++i) {
    double s = z[i];
    for (std::size_t k = 0; k < i; ++k) s -= lower_(i, k) * z[k];
    z[i] = s / lower_(i, i);
  }
  for (std::size_t ii = n; ii-- > 0;) {
    double s = z[ii];
    for (std::size_t k = ii + 1; k < n; ++k) s -= lower_(k, ii) * z[k];
    z[ii] = s / lower_(ii, ii);
  }
  return z;
}

SingularValueExtremes singular_value_extremes(const Matrix& a) {
  if (a.rows() < a.cols()) {
    throw DimensionError("singular_value_extremes: need rows >= cols for full column rank");
  }
  // Rejects rank-deficient designs with a pivot-level message.
  Cholesky::factor(a.gram());

  const Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
      view(a.data().data(), static_cast<Eigen::Index>(a.rows()), static_cast<Eigen::Index>(a.cols()));
  const Eigen::BDCSVD<Eigen::MatrixXd> svd(view);
  const auto& sv = svd.singularValues();
  const double sigma_max = sv(0);
  const double sigma_min = sv(sv.size() - 1);
  if (!(sigma_min > 0.0) || !std::isfinite(sigma_max)) {
    std::ostringstream os;
    os << "singular_value_extremes: degenerate spectrum (sigma_max=" << sigma_max
       << ", sigma_min=" << sigma_min << ")";
    throw NumericalError(os.str());
  }
  return {sigma_max, sigma_min};
}

double condition_number(const Matrix& a) {
  const auto sv = singular_value_extremes(a);
  return sv.sigma_max / sv.sigma_min;
}

}  // namespace nsm::problems
