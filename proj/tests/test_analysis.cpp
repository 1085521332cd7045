#include <gtest/gtest.h>

#include <cmath>

#include "nsm/analysis.hpp"
#include "nsm/error.hpp"
#include "nsm/feasible_set.hpp"
#include "nsm/problems.hpp"

using nsm::FeasibleSet;
using nsm::RealVector;
namespace an = nsm::analysis;

TEST(Threshold, Values) {
  EXPECT_DOUBLE_EQ(an::threshold_probability(1.0), 0.5);
  EXPECT_NEAR(an::threshold_probability(1.0 / std::sqrt(10.0)), 0.2402530733520421, 1e-15);
  EXPECT_NEAR(an::threshold_probability(1.0 / std::sqrt(10.0)), 0.2403, 5e-5);
  EXPECT_LT(an::threshold_probability(1e-12), 1e-11);
  EXPECT_THROW(an::threshold_probability(0.0), nsm::ConfigError);
  EXPECT_THROW(an::threshold_probability(1.5), nsm::ConfigError);
}

TEST(TheoremGamma, Values) {
  EXPECT_DOUBLE_EQ(an::theorem_gamma(10.0, 1.0, 0.0), 5.0);
  // Independent evaluation: R / (2 cos_phi) at q = 0.
  EXPECT_NEAR(an::theorem_gamma(10.0, 1.0 / std::sqrt(10.0), 0.0), 5.0 * std::sqrt(10.0), 1e-12);
  EXPECT_NEAR(an::theorem_gamma(10.0, 1.0 / std::sqrt(10.0), 0.0), 15.811, 1e-3);
}

TEST(TheoremGamma, PoleAtThreshold) {
  const double c = 1.0 / std::sqrt(10.0);
  const double thr = an::threshold_probability(c);
  EXPECT_GT(an::theorem_gamma(10.0, c, thr - 1e-9), 1e6);
  EXPECT_THROW(an::theorem_gamma(10.0, c, thr), nsm::ConfigError);
  EXPECT_THROW(an::theorem_gamma(10.0, c, 0.3), nsm::ConfigError);
}

TEST(StronglyConvexGamma, Values) {
  EXPECT_DOUBLE_EQ(an::strongly_convex_gamma(10.0, 1.0, 0.0), 5.0);
  EXPECT_NEAR(an::strongly_convex_gamma(8.0, 4.0, 0.1), 32.0, 1e-12);
  for (double kappa : {1.0, 2.5, 7.0}) {
    for (double q : {0.0, 0.05, 0.1}) {
      const double a = an::strongly_convex_gamma(3.0, kappa, q);
      const double b = an::theorem_gamma(3.0, 1.0 / kappa, q);
      EXPECT_NEAR(a / b, 1.0, 1e-12);
    }
  }
  EXPECT_THROW(an::strongly_convex_gamma(1.0, 0.5, 0.0), nsm::ConfigError);
}

TEST(BoundCurve, Values) {
  EXPECT_DOUBLE_EQ(an::bound_curve(3.0, 1), 9.0);
  // T = e is not an integer; evaluate the closed form at a nearby pair.
  EXPECT_NEAR(an::bound_curve(1.0, 3), (1.0 + std::log(3.0)) / 3.0, 1e-15);
  EXPECT_THROW(an::bound_curve(1.0, 0), nsm::ConfigError);
}

TEST(BoundCurve, StrictlyDecreasingFromThree) {
  double prev = an::bound_curve(1.0, 2);
  for (std::size_t T = 3; T <= 1000000; ++T) {
    const double cur = an::bound_curve(1.0, T);
    ASSERT_LT(cur, prev) << "T=" << T;
    prev = cur;
  }
}

TEST(TheoryConstants, Validation) {
  const auto tc = an::TheoryConstants::make(0.5, 10.0, 0.1, 0.2);
  EXPECT_DOUBLE_EQ(tc.gamma, an::theorem_gamma(10.0, 0.5, 0.2));
  EXPECT_THROW(an::TheoryConstants::make(0.5, 10.0, 0.3, 0.2), nsm::ConfigError);
  EXPECT_THROW(an::TheoryConstants::make(0.5, 10.0, 0.1, 0.4), nsm::ConfigError);
  EXPECT_THROW(an::TheoryConstants::make(0.5, 10.0, 0.1, 0.2, 3.0), nsm::ConfigError);
}

TEST(EstimateCosPhi, ToyIsExact) {
  nsm::Rng rng(4);
  const double est = an::estimate_cos_phi(nsm::problems::toy_objective(10),
                                          FeasibleSet::diag_box(10.0, 10), 500, rng);
  EXPECT_NEAR(est, 1.0 / std::sqrt(10.0), 1e-9);
}

TEST(EstimateCosPhi, RadialGradient) {
  const nsm::problems::Objective sq(
      "sq", 3, [](const RealVector& x) { return nsm::norm_sq(x); },
      [](const RealVector& x) { return 2.0 * x; }, RealVector::zeros(3));
  nsm::Rng rng(4);
  EXPECT_NEAR(an::estimate_cos_phi(sq, FeasibleSet::ball(RealVector::zeros(3), 1.0), 200, rng),
              1.0, 1e-9);
}

TEST(EstimateCosPhi, LeastSquaresAboveHessianBound) {
  nsm::Rng data_rng(2);
  const auto data = nsm::problems::synth_linreg(5, 40, 10.0, 2.5, data_rng);
  const auto f = nsm::problems::least_squares_objective(data);
  const auto hc = nsm::problems::hessian_constants(data.design());
  nsm::Rng rng(3);
  const double est = an::estimate_cos_phi(f, FeasibleSet::ball(*f.optimum(), 5.0), 2000, rng);
  EXPECT_GE(est, hc.mu / hc.beta - 1e-9);
  EXPECT_LE(est, 1.0 + 1e-12);
}

TEST(EstimateCosPhi, NeedsOptimum) {
  nsm::Rng rng(1);
  const nsm::problems::Objective none(
      "none", 1, [](const RealVector& x) { return x[0]; },
      [](const RealVector&) { return RealVector{1.0}; });
  EXPECT_THROW(an::estimate_cos_phi(none, FeasibleSet::unconstrained(1), 10, rng),
               nsm::ConfigError);
}

TEST(FiniteDiff, Quadratic) {
  const nsm::problems::Objective sq(
      "sq", 4, [](const RealVector& x) { return nsm::norm_sq(x); },
      [](const RealVector& x) { return 2.0 * x; });
  EXPECT_LT(an::finite_diff_check(sq, {0.3, -1.2, 4.0, 0.0}, 1e-6), 1e-8);
}

TEST(FiniteDiff, Toy) {
  EXPECT_LT(an::finite_diff_check(nsm::problems::toy_objective(5), RealVector::filled(5, 2.0), 1e-6),
            1e-6);
}

TEST(FiniteDiff, DetectsWrongGradient) {
  const nsm::problems::Objective wrong(
      "wrong", 3, [](const RealVector& x) { return nsm::norm_sq(x); },
      [](const RealVector& x) { return 2.0 * x + RealVector::filled(3, 1.0); });
  EXPECT_GT(an::finite_diff_check(wrong, {0.1, 0.2, 0.3}, 1e-6), 0.1);
}

TEST(Curvature, LeastSquaresProbeWithinHessianBounds) {
  nsm::Rng data_rng(6);
  const auto data = nsm::problems::synth_linreg(4, 20, 10.0, 2.5, data_rng);
  const auto hc = nsm::problems::hessian_constants(data.design());
  nsm::Rng rng(7);
  const auto probe = an::probe_curvature(nsm::problems::least_squares_objective(data),
                                         FeasibleSet::ball(RealVector::zeros(4), 10.0), 100, rng);
  EXPECT_GE(probe.min_curvature, hc.mu * (1 - 1e-9));
  EXPECT_LE(probe.max_curvature, hc.beta * (1 + 1e-9));
  EXPECT_LE(probe.max_lipschitz_ratio, hc.beta * (1 + 1e-9));
}

TEST(SampleFeasible, StaysInside) {
  nsm::Rng rng(10);
  const auto ball = FeasibleSet::ball({1, -1, 2}, 0.5);
  const auto box = FeasibleSet::diag_box(3.0, 5);
  for (int i = 0; i < 1000; ++i) {
    EXPECT_TRUE(ball.contains(an::sample_feasible(ball, rng)));
    EXPECT_TRUE(box.contains(an::sample_feasible(box, rng)));
  }
}
