#include "nsm/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "nsm/error.hpp"
#include "overloaded.hpp"

namespace nsm::analysis {

using detail::overloaded;

namespace {

void require_probability(double v, const char* what) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw ConfigError(std::string(what) + " must be a probability in [0, 1]");
  }
}

void require_cos_phi(double cos_phi) {
  if (!(cos_phi > 0.0 && cos_phi <= 1.0)) throw ConfigError("cos_phi must lie in (0, 1]");
}

RealVector uniform_in_ball(const RealVector& center, double radius, Rng& rng) {
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::vector<double> dir(center.dim());
  Direction unit{RealVector::zeros(center.dim()), true};
  while (unit.is_zero) {
    for (double& v : dir) v = normal(rng);
    unit = normalize(RealVector(dir));
  }
  const double r = radius * std::pow(uniform(rng), 1.0 / static_cast<double>(center.dim()));
  return center + r * unit.direction;
}

}  // namespace

double threshold_probability(double cos_phi) {
  require_cos_phi(cos_phi);
  return cos_phi / (1.0 + cos_phi);
}

double theorem_gamma(double diameter, double cos_phi, double q) {
  require_cos_phi(cos_phi);
  require_probability(q, "q");
  if (!(diameter > 0.0)) throw ConfigError("theorem_gamma: diameter must be positive");
  const double margin = (1.0 - q) * cos_phi - q;
  if (!(q < threshold_probability(cos_phi)) || !(margin > 0.0)) {
    std::ostringstream os;
    os << "theorem_gamma: q=" << q << " is not below the threshold "
       << threshold_probability(cos_phi);
    throw ConfigError(os.str());
  }
  return diameter / (2.0 * margin);
}

double strongly_convex_gamma(double diameter, double kappa, double q) {
  if (!(kappa >= 1.0)) throw ConfigError("strongly_convex_gamma: kappa must be >= 1");
  require_probability(q, "q");
  if (!(diameter > 0.0)) throw ConfigError("strongly_convex_gamma: diameter must be positive");
  const double margin = (1.0 - q) - q * kappa;
  if (!(margin > 0.0)) {
    std::ostringstream os;
    os << "strongly_convex_gamma: q=" << q << " is not below 1/(1+kappa)=" << 1.0 / (1.0 + kappa);
    throw ConfigError(os.str());
  }
  return kappa * diameter / (2.0 * margin);
}

double bound_curve(double gamma, std::size_t horizon) {
  if (horizon == 0) throw ConfigError("bound_curve: T must be at least 1");
  const double t = static_cast<double>(horizon);
  return gamma * gamma * (1.0 + std::log(t)) / t;
}

TheoryConstants TheoryConstants::make(double cos_phi, double diameter, double p, double q,
                                      std::optional<double> kappa) {
  require_cos_phi(cos_phi);
  require_probability(p, "p");
  require_probability(q, "q");
  if (q < p) throw ConfigError("TheoryConstants: q must be at least p");
  if (kappa && std::abs(cos_phi * *kappa - 1.0) > 1e-12) {
    throw ConfigError("TheoryConstants: cos_phi must equal 1/kappa");
  }
  const double gamma = kappa ? strongly_convex_gamma(diameter, *kappa, q)
                             : theorem_gamma(diameter, cos_phi, q);
  return {cos_phi, kappa, diameter, p, q, gamma};
}

RealVector sample_feasible(const FeasibleSet& set, Rng& rng) {
  return std::visit(
      overloaded{[&](const FeasibleSet::Ball& b) { return uniform_in_ball(b.center, b.radius, rng); },
                 [&](const FeasibleSet::DiagBox& b) {
                   std::uniform_real_distribution<double> u(-b.bound, b.bound);
                   return RealVector::filled(b.dim, u(rng));
                 },
                 [&](const FeasibleSet::Unconstrained& u) {
                   const double radius = u.declared_diameter ? *u.declared_diameter / 2.0 : 1.0;
                   return uniform_in_ball(RealVector::zeros(u.dim), radius, rng);
                 }},
      set.kind());
}

double estimate_cos_phi(const problems::Objective& objective, const FeasibleSet& set,
                        std::size_t samples, Rng& rng) {
  if (!objective.optimum()) throw ConfigError("estimate_cos_phi: objective has no known optimum");
  const RealVector& opt = *objective.optimum();
  double worst = std::numeric_limits<double>::infinity();
  std::size_t used = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    const RealVector x = sample_feasible(set, rng);
    const RealVector offset = x - opt;
    const double dist = norm(offset);
    if (dist <= 1e-9) continue;
    const RealVector g = objective.subgradient(x);
    const double gnorm = norm(g);
    if (gnorm == 0.0) continue;
    worst = std::min(worst, dot(g, offset) / (gnorm * dist));
    ++used;
  }
  if (used == 0) throw ConfigError("estimate_cos_phi: no valid samples");
  return worst;
}

double finite_diff_check(const problems::Objective& objective, const RealVector& x, double step) {
  if (!(step > 0.0)) throw ConfigError("finite_diff_check: step must be positive");
  const RealVector g = objective.subgradient(x);
  std::vector<double> probe = x.to_std();
  double worst = 0.0;
  for (std::size_t i = 0; i < x.dim(); ++i) {
    const double h = step * (1.0 + std::abs(x[i]));
    probe[i] = x[i] + h;
    const double up = objective.value(RealVector(probe));
    probe[i] = x[i] - h;
    const double down = objective.value(RealVector(probe));
    probe[i] = x[i];
    const double fd = (up - down) / (2.0 * h);
    worst = std::max(worst, std::abs(fd - g[i]));
  }
  return worst / std::max(1.0, norm(g));
}

CurvatureProbe probe_curvature(const problems::Objective& objective, const FeasibleSet& set,
                               std::size_t pairs, Rng& rng) {
  CurvatureProbe out{std::numeric_limits<double>::infinity(), 0.0, 0.0};
  std::size_t used = 0;
  for (std::size_t s = 0; s < pairs; ++s) {
    const RealVector a = sample_feasible(set, rng);
    const RealVector b = sample_feasible(set, rng);
    const RealVector dx = a - b;
    const double dist_sq = norm_sq(dx);
    if (dist_sq <= 1e-18) continue;
    const RealVector dg = objective.subgradient(a) - objective.subgradient(b);
    const double curvature = dot(dg, dx) / dist_sq;
    out.min_curvature = std::min(out.min_curvature, curvature);
    out.max_curvature = std::max(out.max_curvature, curvature);
    out.max_lipschitz_ratio = std::max(out.max_lipschitz_ratio, norm(dg) / std::sqrt(dist_sq));
    ++used;
  }
  if (used == 0) throw ConfigError("probe_curvature: no valid pairs");
  return out;
}

}  // namespace nsm::analysis
