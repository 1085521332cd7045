#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "nsm/error.hpp"
#include "nsm/feasible_set.hpp"
#include "nsm/vector.hpp"

using nsm::FeasibleSet;
using nsm::RealVector;

namespace {

void expect_near(const RealVector& a, const RealVector& b, double tol) {
  ASSERT_EQ(a.dim(), b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) EXPECT_NEAR(a[i], b[i], tol) << "entry " << i;
}

}  // namespace

TEST(RealVector, RejectsEmptyAndNonFinite) {
  EXPECT_THROW(RealVector(std::vector<double>{}), nsm::DimensionError);
  EXPECT_THROW(RealVector({1.0, std::numeric_limits<double>::quiet_NaN()}), nsm::NonFiniteError);
  EXPECT_THROW(RealVector({std::numeric_limits<double>::infinity()}), nsm::NonFiniteError);
}

TEST(RealVector, DistanceSquared) {
  EXPECT_DOUBLE_EQ(nsm::distance_sq({0, 0}, {3, 4}), 25.0);
  EXPECT_DOUBLE_EQ(nsm::distance_sq({1, 1}, {1, 1}), 0.0);
  EXPECT_DOUBLE_EQ(nsm::distance_sq({-1, 2, 0}, {1, 0, 2}), 12.0);
  EXPECT_THROW(nsm::distance_sq({1, 2}, {1, 2, 3}), nsm::DimensionError);
}

TEST(RealVector, NormDoesNotOverflow) {
  const RealVector big{1e200, 1e200};
  EXPECT_NEAR(nsm::norm(big) / 1e200, std::sqrt(2.0), 1e-15);
}

TEST(Normalize, Examples) {
  auto d = nsm::normalize({3, 4}, 1e-12);
  EXPECT_FALSE(d.is_zero);
  expect_near(d.direction, {0.6, 0.8}, 1e-15);

  d = nsm::normalize({0, 0}, 1e-12);
  EXPECT_TRUE(d.is_zero);
  EXPECT_EQ(d.direction, RealVector({0, 0}));

  d = nsm::normalize({1e-13, 0}, 1e-12);
  EXPECT_TRUE(d.is_zero);
  EXPECT_EQ(d.direction, RealVector({0, 0}));
}

TEST(Normalize, UnitNormAcrossScales) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> normal;
  for (int e = -150; e <= 150; e += 10) {
    std::vector<double> v(7);
    for (double& x : v) x = normal(rng) * std::pow(10.0, e);
    const auto d = nsm::normalize(RealVector(v), 0.0);
    ASSERT_FALSE(d.is_zero);
    EXPECT_NEAR(nsm::norm(d.direction), 1.0, 1e-14) << "scale 1e" << e;
  }
}

TEST(Project, Examples) {
  expect_near(FeasibleSet::ball(RealVector::zeros(2), 1.0).project({3, 4}), {0.6, 0.8}, 1e-15);
  expect_near(FeasibleSet::diag_box(10.0, 2).project({0, 2}), {1, 1}, 0.0);
  expect_near(FeasibleSet::diag_box(10.0, 3).project({20, 30, 40}), {10, 10, 10}, 0.0);
  EXPECT_EQ(FeasibleSet::unconstrained(2).project({5, -7}), RealVector({5, -7}));
}

TEST(Project, FeasiblePointsAreFixed) {
  const auto ball = FeasibleSet::ball({1, 1}, 2.0);
  EXPECT_EQ(ball.project({1.5, 0.5}), RealVector({1.5, 0.5}));
  const auto box = FeasibleSet::diag_box(3.0, 4);
  EXPECT_EQ(box.project(RealVector::filled(4, -3.0)), RealVector::filled(4, -3.0));
}

TEST(Project, RejectsDimensionMismatch) {
  EXPECT_THROW(FeasibleSet::ball(RealVector::zeros(2), 1.0).project({1, 2, 3}), nsm::DimensionError);
  EXPECT_THROW(FeasibleSet::diag_box(1.0, 3).project({1, 2}), nsm::DimensionError);
}

TEST(Project, RejectsBadParameters) {
  EXPECT_THROW(FeasibleSet::ball(RealVector::zeros(2), 0.0), nsm::ConfigError);
  EXPECT_THROW(FeasibleSet::diag_box(-1.0, 2), nsm::ConfigError);
}

// Brute-force check: no point on a fine grid of the diagonal segment is
// closer to x than the projection.
TEST(Project, DiagBoxMatchesGridSearch) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-25.0, 25.0);
  const auto box = FeasibleSet::diag_box(10.0, 3);
  for (int trial = 0; trial < 50; ++trial) {
    const RealVector x{u(rng), u(rng), u(rng)};
    const RealVector p = box.project(x);
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 20000; ++i) {
      const double s = -10.0 + 20.0 * i / 20000.0;
      best = std::min(best, nsm::distance_sq(x, RealVector::filled(3, s)));
    }
    EXPECT_LE(nsm::distance_sq(x, p), best + 1e-9);
  }
}

TEST(FeasibleSet, Diameters) {
  EXPECT_DOUBLE_EQ(*FeasibleSet::ball(RealVector::zeros(3), 10.0).diameter(), 20.0);
  EXPECT_NEAR(*FeasibleSet::diag_box(10.0, 10).diameter(), 20.0 * std::sqrt(10.0), 1e-12);
  EXPECT_FALSE(FeasibleSet::unconstrained(3).diameter().has_value());
  EXPECT_DOUBLE_EQ(*FeasibleSet::unconstrained(3, 7.0).diameter(), 7.0);
}
