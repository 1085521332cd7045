#include "nsm/vector.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "nsm/error.hpp"

namespace nsm {

namespace {

std::vector<double> checked(std::vector<double> entries) {
  if (entries.empty()) {
    throw DimensionError("RealVector: dimension must be at least 1");
  }
  if (!all_finite(entries)) {
    throw NonFiniteError("RealVector: non-finite entry");
  }
  return entries;
}

template <typename Op>
RealVector zip(const RealVector& a, const RealVector& b, std::string_view what, Op op) {
  require_same_dim(a.dim(), b.dim(), what);
  std::vector<double> out(a.dim());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = op(a[i], b[i]);
  return RealVector(std::move(out));
}

template <typename Op>
RealVector map(const RealVector& a, Op op) {
  std::vector<double> out(a.dim());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = op(a[i]);
  return RealVector(std::move(out));
}

}  // namespace

RealVector::RealVector(std::initializer_list<double> entries)
    : entries_(checked(std::vector<double>(entries))) {}

RealVector::RealVector(std::vector<double> entries) : entries_(checked(std::move(entries))) {}

RealVector RealVector::zeros(std::size_t dim) { return RealVector(std::vector<double>(dim, 0.0)); }

RealVector RealVector::filled(std::size_t dim, double value) {
  return RealVector(std::vector<double>(dim, value));
}

RealVector RealVector::basis(std::size_t dim, std::size_t index, double scale) {
  if (index >= dim) {
    throw DimensionError("RealVector::basis: index " + std::to_string(index) +
                         " out of range for dimension " + std::to_string(dim));
  }
  std::vector<double> e(dim, 0.0);
  e[index] = scale;
  return RealVector(std::move(e));
}

bool all_finite(std::span<const double> values) noexcept {
  for (double v : values) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

void require_same_dim(std::size_t a, std::size_t b, std::string_view context) {
  if (a != b) {
    throw DimensionError(std::string(context) + ": dimension mismatch (" + std::to_string(a) +
                         " vs " + std::to_string(b) + ")");
  }
}

RealVector operator+(const RealVector& a, const RealVector& b) {
  return zip(a, b, "operator+", [](double x, double y) { return x + y; });
}

RealVector operator-(const RealVector& a, const RealVector& b) {
  return zip(a, b, "operator-", [](double x, double y) { return x - y; });
}

RealVector operator-(const RealVector& a) {
  return map(a, [](double x) { return -x; });
}

RealVector operator*(double s, const RealVector& a) {
  return map(a, [s](double x) { return s * x; });
}

RealVector operator*(const RealVector& a, double s) { return s * a; }

RealVector operator/(const RealVector& a, double s) {
  return map(a, [s](double x) { return x / s; });
}

double dot(const RealVector& a, const RealVector& b) {
  require_same_dim(a.dim(), b.dim(), "dot");
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

double norm_sq(const RealVector& a) { return dot(a, a); }

double norm(const RealVector& a) {
  // hypot-style scaling keeps tiny and huge vectors from under/overflowing.
  double scale = 0.0;
  for (double v : a) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) return 0.0;
  double sum = 0.0;
  for (double v : a) {
    const double r = v / scale;
    sum += r * r;
  }
  return scale * std::sqrt(sum);
}

double distance_sq(const RealVector& a, const RealVector& b) {
  require_same_dim(a.dim(), b.dim(), "distance_sq");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    const double diff = a[i] - b[i];
    sum += diff * diff;
  }
  return sum;
}

double mean(const RealVector& a) {
  return std::accumulate(a.begin(), a.end(), 0.0) / static_cast<double>(a.dim());
}

Direction normalize(const RealVector& v, double zero_tol) {
  const double n = norm(v);
  if (!(n > zero_tol)) return {RealVector::zeros(v.dim()), true};
  return {v / n, false};
}

}  // namespace nsm
