#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "nsm/error.hpp"
#include "nsm/linalg.hpp"
#include "nsm/matrix.hpp"
#include "oracles.hpp"

using nsm::Matrix;

TEST(Matrix, GramAndProducts) {
  const Matrix a = Matrix::from_rows({{1, 2}, {3, 4}, {5, 6}});
  const Matrix g = a.gram();
  EXPECT_EQ(g, Matrix::from_rows({{35, 44}, {44, 56}}));
  EXPECT_EQ(a.multiply(std::vector<double>{1, 1}), (std::vector<double>{3, 7, 11}));
  EXPECT_EQ(a.multiply_transposed(std::vector<double>{1, 0, 1}), (std::vector<double>{6, 8}));
}

TEST(Cholesky, SolvesSpdSystem) {
  const Matrix g = Matrix::from_rows({{4, 2}, {2, 3}});
  const auto chol = nsm::problems::Cholesky::factor(g);
  const auto x = chol.solve(std::vector<double>{2, 1});
  EXPECT_NEAR(4 * x[0] + 2 * x[1], 2.0, 1e-14);
  EXPECT_NEAR(2 * x[0] + 3 * x[1], 1.0, 1e-14);
}

TEST(Cholesky, SingularMatrixThrows) {
  EXPECT_THROW(nsm::problems::Cholesky::factor(Matrix::from_rows({{1, 1}, {1, 1}})),
               nsm::NumericalError);
}

TEST(ConditionNumber, Examples) {
  EXPECT_NEAR(nsm::problems::condition_number(Matrix::identity(4)), 1.0, 1e-10);
  const std::vector<double> diag{2.0, 1.0};
  EXPECT_NEAR(nsm::problems::condition_number(Matrix::diagonal(diag)), 2.0, 1e-9);
}

TEST(ConditionNumber, MatchesJacobiOracle) {
  for (std::uint64_t seed : {1u, 2u, 3u, 4u, 5u}) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    oracle::Dense dense(8, std::vector<double>(4));
    Matrix a(8, 4);
    for (std::size_t i = 0; i < 8; ++i) {
      for (std::size_t j = 0; j < 4; ++j) {
        dense[i][j] = normal(rng);
        a(i, j) = dense[i][j];
      }
    }
    const auto eig = oracle::jacobi_eigenvalues(oracle::gram(dense));
    const double expected_max = std::sqrt(eig.back());
    const double expected_min = std::sqrt(eig.front());
    const auto sv = nsm::problems::singular_value_extremes(a);
    EXPECT_NEAR(sv.sigma_max / expected_max, 1.0, 1e-8) << "seed " << seed;
    EXPECT_NEAR(sv.sigma_min / expected_min, 1.0, 1e-8) << "seed " << seed;
    EXPECT_NEAR(nsm::problems::condition_number(a) / (expected_max / expected_min), 1.0, 1e-8);
  }
}

TEST(ConditionNumber, RankDeficientThrows) {
  const Matrix a = Matrix::from_rows({{1, 2}, {2, 4}, {3, 6}});
  EXPECT_THROW(nsm::problems::condition_number(a), nsm::NumericalError);
}

// Gaussian designs whose two smallest singular values nearly coincide used
// to stall an iterative estimate; every seed must produce a finite kappa.
TEST(ConditionNumber, StableAcrossManySeeds) {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    Matrix a(200, 20);
    for (std::size_t i = 0; i < 200; ++i)
      for (std::size_t j = 0; j < 20; ++j) a(i, j) = normal(rng);
    const double kappa = nsm::problems::condition_number(a);
    ASSERT_TRUE(std::isfinite(kappa)) << "seed " << seed;
    ASSERT_GE(kappa, 1.0);
  }
}
