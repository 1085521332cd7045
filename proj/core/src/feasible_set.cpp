#include "nsm/feasible_set.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nsm/error.hpp"
#include "overloaded.hpp"

namespace nsm {

namespace {

using detail::overloaded;

bool all_equal(const RealVector& x) {
  return std::all_of(x.begin(), x.end(), [&](double v) { return v == x[0]; });
}

}  // namespace

FeasibleSet FeasibleSet::ball(RealVector center, double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw ConfigError("FeasibleSet::ball: radius must be positive and finite");
  }
  return FeasibleSet(Ball{std::move(center), radius});
}

FeasibleSet FeasibleSet::diag_box(double bound, std::size_t dim) {
  if (!(bound > 0.0) || !std::isfinite(bound)) {
    throw ConfigError("FeasibleSet::diag_box: bound must be positive and finite");
  }
  if (dim == 0) throw DimensionError("FeasibleSet::diag_box: dimension must be at least 1");
  return FeasibleSet(DiagBox{bound, dim});
}

FeasibleSet FeasibleSet::unconstrained(std::size_t dim, std::optional<double> declared_diameter) {
  if (dim == 0) throw DimensionError("FeasibleSet::unconstrained: dimension must be at least 1");
  if (declared_diameter && (!(*declared_diameter > 0.0) || !std::isfinite(*declared_diameter))) {
    throw ConfigError("FeasibleSet::unconstrained: declared diameter must be positive");
  }
  return FeasibleSet(Unconstrained{dim, declared_diameter});
}

std::size_t FeasibleSet::dim() const noexcept {
  return std::visit(overloaded{[](const Ball& b) { return b.center.dim(); },
                               [](const DiagBox& b) { return b.dim; },
                               [](const Unconstrained& u) { return u.dim; }},
                    kind_);
}

std::optional<double> FeasibleSet::diameter() const noexcept {
  return std::visit(
      overloaded{[](const Ball& b) -> std::optional<double> { return 2.0 * b.radius; },
                 [](const DiagBox& b) -> std::optional<double> {
                   return 2.0 * b.bound * std::sqrt(static_cast<double>(b.dim));
                 },
                 [](const Unconstrained& u) { return u.declared_diameter; }},
      kind_);
}

bool FeasibleSet::contains(const RealVector& x, double tol) const {
  require_same_dim(x.dim(), dim(), "FeasibleSet::contains");
  return std::visit(
      overloaded{[&](const Ball& b) { return norm(x - b.center) <= b.radius + tol; },
                 [&](const DiagBox& b) {
                   const double m = mean(x);
                   const bool on_diagonal = std::all_of(
                       x.begin(), x.end(), [&](double v) { return std::abs(v - m) <= tol; });
                   return on_diagonal && std::abs(m) <= b.bound + tol;
                 },
                 [](const Unconstrained&) { return true; }},
      kind_);
}

RealVector FeasibleSet::project(const RealVector& x) const {
  require_same_dim(x.dim(), dim(), "FeasibleSet::project");
  return std::visit(
      overloaded{[&](const Ball& b) -> RealVector {
                   const RealVector offset = x - b.center;
                   const double dist = norm(offset);
                   if (dist <= b.radius) return x;
                   return b.center + (b.radius / dist) * offset;
                 },
                 [&](const DiagBox& b) -> RealVector {
                   if (all_equal(x) && std::abs(x[0]) <= b.bound) return x;
                   // Orthogonal projection onto the diagonal line is the
                   // coordinate mean; clamping it projects onto the segment.
                   const double m = std::clamp(mean(x), -b.bound, b.bound);
                   return RealVector::filled(b.dim, m);
                 },
                 [&](const Unconstrained&) { return x; }},
      kind_);
}

std::string FeasibleSet::describe() const {
  std::ostringstream os;
  std::visit(overloaded{[&](const Ball& b) {
                          os << "ball(dim=" << b.center.dim() << ", radius=" << b.radius << ")";
                        },
                        [&](const DiagBox& b) {
                          os << "diag-box(dim=" << b.dim << ", bound=" << b.bound << ")";
                        },
                        [&](const Unconstrained& u) {
                          os << "unconstrained(dim=" << u.dim << ")";
                        }},
             kind_);
  if (const auto d = diameter()) os << " diameter=" << *d;
  return os.str();
}

}  // namespace nsm
