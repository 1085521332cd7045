#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>

#include "nsm/vector.hpp"

namespace nsm {

/// Convex feasible region with exact Euclidean projection.
///
/// Three shapes are supported:
///  - Ball: {x : ||x - center|| <= radius}, diameter 2 * radius.
///  - DiagBox: the diagonal segment {x : x_0 = ... = x_{d-1}, |x_i| <= bound},
///    diameter 2 * bound * sqrt(d).
///  - Unconstrained: R^d. Its diameter is whatever the caller declares (for
///    step-size formulas) and is absent otherwise.
class FeasibleSet {
 public:
  struct Ball {
    RealVector center;
    double radius;
  };
  struct DiagBox {
    double bound;
    std::size_t dim;
  };
  struct Unconstrained {
    std::size_t dim;
    std::optional<double> declared_diameter;
  };
  using Kind = std::variant<Ball, DiagBox, Unconstrained>;

  static FeasibleSet ball(RealVector center, double radius);
  static FeasibleSet diag_box(double bound, std::size_t dim);
  static FeasibleSet unconstrained(std::size_t dim,
                                   std::optional<double> declared_diameter = std::nullopt);

  std::size_t dim() const noexcept;
  std::optional<double> diameter() const noexcept;
  const Kind& kind() const noexcept { return kind_; }

  /// Membership up to `tol` (absolute, in the units of x).
  bool contains(const RealVector& x, double tol = 1e-12) const;

  /// Nearest point of the set. Feasible inputs are returned unchanged.
  RealVector project(const RealVector& x) const;

  std::string describe() const;

 private:
  explicit FeasibleSet(Kind kind) : kind_(std::move(kind)) {}
  Kind kind_;
};

}  // namespace nsm
