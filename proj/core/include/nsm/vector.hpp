#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string_view>
#include <vector>

namespace nsm {

inline constexpr double kDefaultZeroTol = 1e-12;

/// Dense real vector holding iterates, subgradients and feedback.
///
/// Every RealVector has dim >= 1 and only finite entries; construction throws
/// NonFiniteError otherwise. Arithmetic that overflows therefore throws too,
/// which is how divergence surfaces in the optimizers.
class RealVector {
 public:
  RealVector(std::initializer_list<double> entries);
  explicit RealVector(std::vector<double> entries);

  static RealVector zeros(std::size_t dim);
  static RealVector filled(std::size_t dim, double value);
  static RealVector basis(std::size_t dim, std::size_t index, double scale = 1.0);

  std::size_t dim() const noexcept { return entries_.size(); }
  double operator[](std::size_t i) const { return entries_[i]; }
  double at(std::size_t i) const { return entries_.at(i); }
  std::span<const double> entries() const noexcept { return entries_; }
  std::vector<double> to_std() const { return entries_; }

  auto begin() const noexcept { return entries_.begin(); }
  auto end() const noexcept { return entries_.end(); }

  friend bool operator==(const RealVector&, const RealVector&) = default;

 private:
  std::vector<double> entries_;
};

bool all_finite(std::span<const double> values) noexcept;

/// Throws DimensionError naming `context` when the sizes differ.
void require_same_dim(std::size_t a, std::size_t b, std::string_view context);

RealVector operator+(const RealVector& a, const RealVector& b);
RealVector operator-(const RealVector& a, const RealVector& b);
RealVector operator-(const RealVector& a);
RealVector operator*(double s, const RealVector& a);
RealVector operator*(const RealVector& a, double s);
RealVector operator/(const RealVector& a, double s);

double dot(const RealVector& a, const RealVector& b);
double norm_sq(const RealVector& a);
double norm(const RealVector& a);
double distance_sq(const RealVector& a, const RealVector& b);
double mean(const RealVector& a);

struct Direction {
  RealVector direction;
  bool is_zero;
};

/// Unit vector along `v`, or the zero vector with is_zero set when
/// ||v|| <= zero_tol.
Direction normalize(const RealVector& v, double zero_tol = kDefaultZeroTol);

}  // namespace nsm
