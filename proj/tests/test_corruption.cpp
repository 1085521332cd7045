#include <gtest/gtest.h>

#include <cmath>

#include "nsm/corruption.hpp"
#include "nsm/error.hpp"

using nsm::RealVector;
namespace co = nsm::corruption;

TEST(Adversary, NegateIterate) {
  const RealVector x = RealVector::filled(10, 5.0);
  const RealVector g = RealVector::basis(10, 9, 500.0);
  const auto b = co::corrupt_vector(co::NegateIterate(RealVector::filled(10, 1.0)), {x, g, 1.0});
  EXPECT_EQ(b, RealVector::filled(10, -5.0));
}

TEST(Adversary, NegateIterateAtOriginUsesFallback) {
  const RealVector x = RealVector::zeros(3);
  const auto b = co::corrupt_vector(co::NegateIterate(RealVector::filled(3, 1.0)), {x, x, 1.0});
  EXPECT_EQ(b, RealVector::filled(3, 1.0));
}

TEST(Adversary, ScaledOpposite) {
  const RealVector x{0, 0};
  const RealVector g{1, 0};
  EXPECT_EQ(co::corrupt_vector(co::ScaledOpposite(15.0), {x, g, 1.0}), RealVector({-15, 0}));
  EXPECT_THROW(co::ScaledOpposite(0.0), nsm::ConfigError);
}

TEST(Adversary, WorstCaseDirectional) {
  const RealVector x{10, 0};
  const RealVector g{1, 1};
  const RealVector opt{0, 0};
  const auto b = co::corrupt_vector(co::WorstCaseDirectional{}, {x, g, 1.0, &opt, 10.0});
  EXPECT_NEAR(b[0], -10.0, 1e-15);
  EXPECT_NEAR(b[1], 0.0, 1e-15);

  const auto scaled = co::corrupt_vector(co::WorstCaseDirectional{}, {x, g, 0.5, &opt, 10.0});
  EXPECT_NEAR(scaled[0], -20.0, 1e-14);
}

TEST(Adversary, WorstCaseAtOptimumIsFinite) {
  const RealVector x{1, 2};
  const auto b = co::corrupt_vector(co::WorstCaseDirectional{}, {x, x, 2.0, &x, 10.0});
  EXPECT_EQ(b, RealVector({5.0, 0.0}));
}

TEST(Adversary, WorstCaseNeedsContext) {
  const RealVector x{1, 2};
  EXPECT_THROW(co::corrupt_vector(co::WorstCaseDirectional{}, {x, x, 1.0, nullptr, 10.0}),
               nsm::ConfigError);
  EXPECT_THROW(co::corrupt_vector(co::WorstCaseDirectional{}, {x, x, 1.0, &x, std::nullopt}),
               nsm::ConfigError);
}

TEST(Adversary, FixedVectorDimensionChecked) {
  const RealVector x{1, 2};
  EXPECT_EQ(co::corrupt_vector(co::FixedVector({3, 4}), {x, x, 1.0}), RealVector({3, 4}));
  EXPECT_THROW(co::corrupt_vector(co::FixedVector({3, 4, 5}), {x, x, 1.0}), nsm::DimensionError);
}

TEST(Channel, DegenerateProbabilities) {
  const RealVector x{1, 2};
  const RealVector g{3, 4};
  co::CorruptionChannel never(0.0, co::ScaledOpposite(2.0), 1);
  co::CorruptionChannel always(1.0, co::ScaledOpposite(2.0), 1);
  for (int i = 0; i < 1000; ++i) {
    const auto a = never.next({x, g, 1.0});
    EXPECT_FALSE(a.corrupted);
    EXPECT_EQ(a.h, g);
    const auto b = always.next({x, g, 1.0});
    EXPECT_TRUE(b.corrupted);
    EXPECT_EQ(b.h, RealVector({-6, -8}));
  }
  EXPECT_EQ(never.draws_made(), 1000u);
  EXPECT_EQ(always.corruptions_made(), 1000u);
}

TEST(Channel, BinomialFrequency) {
  const RealVector x{1};
  const double p = 0.25;
  const std::uint64_t n = 100000;
  co::CorruptionChannel ch(p, co::ScaledOpposite(1.0), 12345);
  for (std::uint64_t i = 0; i < n; ++i) ch.next({x, x, 1.0});
  const double frac = static_cast<double>(ch.corruptions_made()) / n;
  EXPECT_LE(std::abs(frac - p), 3.0 * std::sqrt(p * (1 - p) / n));
}

// The gate decision does not depend on the iterate: two channels with the
// same seed agree on which calls are corrupt, whatever they are shown.
TEST(Channel, PatternDependsOnlyOnSeed) {
  co::CorruptionChannel a(0.3, co::ScaledOpposite(1.0), 77);
  co::CorruptionChannel b(0.3, co::NegateIterate(RealVector::filled(2, 1.0)), 77);
  for (int i = 0; i < 500; ++i) {
    const RealVector xa{static_cast<double>(i), 1};
    const RealVector xb{-3, 0.5 * i};
    EXPECT_EQ(a.next({xa, xa, 1.0}).corrupted, b.next({xb, xb, 2.0}).corrupted);
  }
}

TEST(Channel, RejectsBadProbability) {
  EXPECT_THROW(co::CorruptionChannel(-0.1, co::ScaledOpposite(1.0), 1), nsm::ConfigError);
  EXPECT_THROW(co::CorruptionChannel(1.5, co::ScaledOpposite(1.0), 1), nsm::ConfigError);
}
