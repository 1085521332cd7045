#pragma once

#include <cstddef>
#include <optional>

#include "nsm/feasible_set.hpp"
#include "nsm/problems.hpp"
#include "nsm/rng.hpp"
#include "nsm/vector.hpp"

namespace nsm::analysis {

/// cos(phi) / (1 + cos(phi)): the largest corruption probability under which
/// the normalized method is guaranteed to converge for an objective whose
/// subgradients make at most angle phi with x - x*(x).
double threshold_probability(double cos_phi);

/// Step-size constant gamma = R / (2 ((1 - q) cos_phi - q)) for a design
/// probability q in [p, threshold). Use with gamma_t = gamma / t.
double theorem_gamma(double diameter, double cos_phi, double q);

/// kappa R / (2 ((1 - q) - q kappa)); identical to theorem_gamma with
/// cos_phi = 1 / kappa.
double strongly_convex_gamma(double diameter, double kappa, double q);

/// gamma^2 (1 + ln T) / T, the bound on E||x_{T+1} - x*||^2 that the
/// theorem step size guarantees.
double bound_curve(double gamma, std::size_t horizon);

/// Validated bundle of the constants above.
struct TheoryConstants {
  /// Throws ConfigError unless 0 < cos_phi <= 1, 0 <= p <= q < threshold,
  /// and (when given) kappa == 1 / cos_phi.
  static TheoryConstants make(double cos_phi, double diameter, double p, double q,
                              std::optional<double> kappa = std::nullopt);

  double cos_phi;
  std::optional<double> kappa;
  double diameter;
  double p;
  double q;
  double gamma;

  double threshold() const { return threshold_probability(cos_phi); }
};

/// Uniform sample from the set. Unconstrained sets are sampled from the ball
/// of half their declared diameter (radius 1 if none) around the origin.
RealVector sample_feasible(const FeasibleSet& set, Rng& rng);

/// Sampled lower estimate of the acute-angle constant cos(phi):
/// min over samples of <g(x), x - x*> / (||g(x)|| ||x - x*||), skipping points
/// within 1e-9 of x* and points with zero subgradient. Not a certificate.
/// Throws ConfigError without a known optimum or when no sample qualifies.
double estimate_cos_phi(const problems::Objective& objective, const FeasibleSet& set,
                        std::size_t samples, Rng& rng);

/// Central-difference gradient check with per-coordinate step
/// step * (1 + |x_i|); returns max_i |fd_i - g_i| / max(1, ||g||).
double finite_diff_check(const problems::Objective& objective, const RealVector& x, double step);

/// Extremes of the secant curvature <g(a) - g(b), a - b> / ||a - b||^2 and of
/// the gradient Lipschitz ratio ||g(a) - g(b)|| / ||a - b|| over random
/// feasible pairs: empirical probes of strong convexity and smoothness.
struct CurvatureProbe {
  double min_curvature;
  double max_curvature;
  double max_lipschitz_ratio;
};
CurvatureProbe probe_curvature(const problems::Objective& objective, const FeasibleSet& set,
                               std::size_t pairs, Rng& rng);

}  // namespace nsm::analysis
