#include <gtest/gtest.h>

#include <Eigen/Dense>

#include <random>
#include <vector>

#include "wmgtomo/dense.hpp"
#include "wmgtomo/random.hpp"
#include "wmgtomo/sparse.hpp"

using namespace wmgtomo;

namespace {

DenseMatrix random_spd(int n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  DenseMatrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = g(rng);
  return a.transpose() * a + DenseMatrix::Identity(n, n);
}

}  // namespace

TEST(Cholesky, IdentityFactorsToIdentity) {
  const auto f = cholesky_factor(DenseMatrix::Identity(4, 4));
  EXPECT_EQ((f.lower() - DenseMatrix::Identity(4, 4)).cwiseAbs().maxCoeff(), 0.0);
  const std::vector<double> rhs{1, -2, 3, 0.5};
  EXPECT_EQ(cholesky_solve(f, rhs), rhs);
}

TEST(Cholesky, DiagonalFactor) {
  DenseMatrix g = DenseMatrix::Zero(2, 2);
  g(0, 0) = 4;
  g(1, 1) = 9;
  const auto l = cholesky_factor(g).lower();
  EXPECT_DOUBLE_EQ(l(0, 0), 2.0);
  EXPECT_DOUBLE_EQ(l(1, 1), 3.0);
  EXPECT_EQ(l(1, 0), 0.0);
}

TEST(Cholesky, RandomSpdSolveMatchesInverse) {
  const auto g = random_spd(20, 1);
  const auto f = cholesky_factor(g);
  const auto rhs = seeded_uniform(20, 3);
  const auto z = cholesky_solve(f, rhs);
  const Eigen::VectorXd b = Eigen::Map<const Eigen::VectorXd>(rhs.data(), 20);
  const Eigen::VectorXd expected = g.inverse() * b;
  const Eigen::VectorXd got = Eigen::Map<const Eigen::VectorXd>(z.data(), 20);
  EXPECT_LE((got - expected).norm(), 1e-10 * expected.norm());
  EXPECT_LE((g * got - b).norm(), 1e-9 * b.norm());
}

TEST(Cholesky, RoundTripReproducesInput) {
  for (unsigned seed = 1; seed <= 5; ++seed) {
    const auto g = random_spd(15, seed);
    const auto l = cholesky_factor(g).lower();
    EXPECT_LE((l * l.transpose() - g).norm(), 1e-10 * g.norm());
  }
}

TEST(Cholesky, RejectsAsymmetricInput) {
  DenseMatrix g = DenseMatrix::Identity(3, 3);
  g(0, 2) = 0.5;
  EXPECT_THROW(cholesky_factor(g), std::invalid_argument);
}

TEST(Cholesky, RejectsIndefiniteInput) {
  DenseMatrix g = DenseMatrix::Identity(3, 3);
  g(1, 1) = -1.0;
  EXPECT_THROW(cholesky_factor(g), NotPositiveDefinite);
}

TEST(Cholesky, RejectsRankDeficientGram) {
  // columns 0 and 1 identical: the Gram matrix is singular
  const std::vector<double> d{1, 1, 0, 2, 2, 1, 0, 0, 3};
  EXPECT_THROW(cholesky_factor(gram(from_dense(3, 3, d))), NotPositiveDefinite);
}

TEST(Cholesky, SolveChecksSize) {
  const auto f = cholesky_factor(DenseMatrix::Identity(3, 3));
  std::vector<double> rhs(4);
  EXPECT_THROW(f.solve_in_place(rhs), DimensionError);
}

TEST(Gram, MatchesDenseProductPlusShift) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> d(9 * 6);
  for (auto& v : d) v = u(rng) < 0.4 ? u(rng) : 0.0;
  const auto p = from_dense(9, 6, d);
  const DenseMatrix pd = to_dense(p);
  const DenseMatrix expected = pd.transpose() * pd + 2.5 * DenseMatrix::Identity(6, 6);
  const DenseMatrix g = gram(p, 2.5);
  EXPECT_LE((g - expected).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_EQ((g - g.transpose()).cwiseAbs().maxCoeff(), 0.0);
}
