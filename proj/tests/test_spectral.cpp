#include <gtest/gtest.h>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <memory>
#include <vector>

#include "wmgtomo/dense.hpp"
#include "wmgtomo/geometry.hpp"
#include "wmgtomo/linear_operator.hpp"
#include "wmgtomo/random.hpp"
#include "wmgtomo/solvers.hpp"
#include "wmgtomo/spectral.hpp"
#include "wmgtomo/two_grid.hpp"
#include "wmgtomo/wmg.hpp"

using namespace wmgtomo;

namespace {

using Vec = Eigen::VectorXd;

std::shared_ptr<const SparseOperator> projector(long n, long angles, ProjectorKernel k = ProjectorKernel::line) {
  return std::make_shared<const SparseOperator>(build_projector(build_geometry(n, n, angles), k));
}

LinearOperator scaled_identity(std::size_t n, double s) {
  return {n, [s](std::span<const double> in, std::span<double> out) {
            for (std::size_t i = 0; i < in.size(); ++i) out[i] = s * in[i];
          }};
}

LinearOperator dense_operator(DenseMatrix a) {
  auto m = std::make_shared<const DenseMatrix>(std::move(a));
  return {static_cast<std::size_t>(m->rows()), [m](std::span<const double> in, std::span<double> out) {
            Eigen::Map<Vec>(out.data(), m->rows()) = *m * Eigen::Map<const Vec>(in.data(), m->cols());
          }};
}

void expect_sorted_by_magnitude(const Spectrum& s) {
  for (std::size_t k = 1; k < s.size(); ++k) EXPECT_LE(std::abs(s.eigenvalues[k - 1]), std::abs(s.eigenvalues[k]));
}

std::vector<double> sorted_real(const std::vector<std::complex<double>>& ev) {
  std::vector<double> r;
  for (auto v : ev) r.push_back(v.real());
  std::sort(r.begin(), r.end());
  return r;
}

}  // namespace

TEST(AssembleDense, SmallOperators) {
  EXPECT_EQ(assemble_dense(identity_operator(3)), DenseMatrix::Identity(3, 3));
  EXPECT_EQ(assemble_dense(scaled_identity(2, 2.0)), DenseMatrix(2.0 * DenseMatrix::Identity(2, 2)));
}

TEST(AssembleDense, NormalOperatorMatchesTripleProduct) {
  const auto w = projector(4, 6, ProjectorKernel::joseph);
  const DenseMatrix wd = to_dense(*w);
  const DenseMatrix a = assemble_dense(normal_operator(w, 0.0));
  EXPECT_LE((a - wd.transpose() * wd).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LE((a - a.transpose()).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(AssembleDense, SelfAdjointOperatorsAssembleSymmetric) {
  const auto w = projector(16, 24);
  for (double lambda : {0.0, 3.0}) {
    const DenseMatrix a = assemble_dense(normal_operator(w, lambda));
    EXPECT_LE((a - a.transpose()).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(AssembleDense, SizeGuard) {
  const auto big = identity_operator(kDenseAssemblyLimit + 1);
  EXPECT_THROW(assemble_dense(big), std::invalid_argument);
  const DenseMatrix forced = assemble_dense(big, true);
  EXPECT_EQ(forced.trace(), static_cast<double>(kDenseAssemblyLimit + 1));
}

TEST(Spectrum, Accessors) {
  Spectrum s;
  EXPECT_TRUE(std::isnan(s.condition_number()));
  EXPECT_EQ(s.spectral_radius(), 0.0);
  s.eigenvalues = {{0.5, 0.0}, {-2.0, 0.0}, {0.0, 4.0}};
  EXPECT_DOUBLE_EQ(s.condition_number(), 8.0);
  EXPECT_DOUBLE_EQ(s.spectral_radius(), 4.0);
  s.eigenvalues.front() = 0.0;
  EXPECT_TRUE(std::isinf(s.condition_number()));
  EXPECT_STREQ(to_string(SpectrumSource::sirt_s), "sirt-S");
  EXPECT_STREQ(to_string(SpectrumSource::wtg_preconditioned), "wtg-preconditioned");
}

TEST(SirtSpectrum, ScalarIdentityHasZeroSpectrum) {
  const auto s = sirt_spectrum(sparse_identity(1));
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s.eigenvalues[0], std::complex<double>(0.0, 0.0));
  EXPECT_EQ(s.source, SpectrumSource::sirt_s);
}

TEST(SirtSpectrum, MatchesGeneralEigensolverOfIterationMatrix) {
  const auto w = projector(40, 100);
  const auto s = sirt_spectrum(*w);
  ASSERT_EQ(s.size(), 1600u);
  expect_sorted_by_magnitude(s);

  const auto scaling = sirt_scaling(*w);
  const DenseMatrix wd = to_dense(*w);
  const Eigen::Map<const Vec> c(scaling.c.data(), 1600), r(scaling.r.data(), 4000);
  const DenseMatrix iter = DenseMatrix::Identity(1600, 1600) - c.asDiagonal() * wd.transpose() * r.asDiagonal() * wd;
  const Eigen::EigenSolver<DenseMatrix> es(iter, false);
  std::vector<std::complex<double>> oracle(es.eigenvalues().data(), es.eigenvalues().data() + 1600);
  double imag = 0.0;
  for (auto v : oracle) imag = std::max(imag, std::abs(v.imag()));
  EXPECT_LE(imag, 1e-8);
  EXPECT_LE(max_imaginary(s), 1e-8);

  const auto mine = sorted_real(s.eigenvalues), theirs = sorted_real(oracle);
  for (std::size_t k = 0; k < mine.size(); ++k) EXPECT_NEAR(mine[k], theirs[k], 1e-8) << k;
  EXPECT_GT(mine.front(), -1.0);
  EXPECT_LE(mine.back(), 1.0 + 1e-8);
}

TEST(SirtSpectrum, EigenvectorsSatisfyEigenEquation) {
  const auto w = projector(12, 30);
  const auto s = sirt_spectrum(*w, true);
  ASSERT_TRUE(s.eigenvectors.has_value());
  const auto scaling = sirt_scaling(*w);
  const DenseMatrix wd = to_dense(*w);
  const auto n = wd.cols();
  const Eigen::Map<const Vec> c(scaling.c.data(), n), r(scaling.r.data(), wd.rows());
  const DenseMatrix iter = DenseMatrix::Identity(n, n) - c.asDiagonal() * wd.transpose() * r.asDiagonal() * wd;
  for (Eigen::Index k = 0; k < n; ++k) {
    const Vec v = s.eigenvectors->col(k);
    EXPECT_NEAR(v.norm(), 1.0, 1e-12);
    EXPECT_LE((iter * v - s.eigenvalues[static_cast<std::size_t>(k)].real() * v).norm(), 1e-10) << k;
  }
}

TEST(NormalSpectrum, MatchesSelfAdjointSolver) {
  const auto w = projector(16, 24);
  const double lambda = 0.25;
  const auto s = normal_spectrum(*w, lambda);
  expect_sorted_by_magnitude(s);
  const DenseMatrix wd = to_dense(*w);
  const Eigen::SelfAdjointEigenSolver<DenseMatrix> es(wd.transpose() * wd + lambda * DenseMatrix::Identity(256, 256));
  const Vec ev = es.eigenvalues();
  for (Eigen::Index k = 0; k < 256; ++k) EXPECT_NEAR(s.eigenvalues[static_cast<std::size_t>(k)].real(), ev[k], 1e-9);
  EXPECT_NEAR(s.condition_number(), ev.maxCoeff() / ev.minCoeff(), 1e-6 * ev.maxCoeff() / ev.minCoeff());
}

TEST(CoarseSpectrum, OrthonormalColumnsGiveUnitSpectrum) {
  const auto w = sparse_identity(64);
  for (auto b : kBands) {
    const auto s = coarse_spectrum(w, 8, b);
    ASSERT_EQ(s.size(), 16u);
    for (auto v : s.eigenvalues) EXPECT_NEAR(v.real(), 1.0, 1e-14);
    EXPECT_EQ(s.variant, to_string(b));
  }
}

TEST(CoarseSpectrum, GramPositivityAndSmoothModePersistence) {
  const auto w = projector(40, 100);
  const double fine_max = normal_spectrum(*w).spectral_radius();
  for (auto b : kBands) {
    const auto s = coarse_spectrum(*w, 40, b);
    double lo = INFINITY;
    for (auto v : s.eigenvalues) lo = std::min(lo, v.real());
    EXPECT_GE(lo, -1e-10) << to_string(b);
    if (b == Band::LL) {
      EXPECT_LE(s.spectral_radius(), 2.0 * fine_max);
      EXPECT_GE(s.spectral_radius(), 0.5 * fine_max);
    }
  }
}

TEST(PreconditionedSpectrum, ExactInverseGivesUnitSpectrum) {
  const auto w = projector(8, 12);
  const double lambda = 0.1;
  const DenseMatrix a = to_dense(*w).transpose() * to_dense(*w) + lambda * DenseMatrix::Identity(64, 64);
  const auto s = preconditioned_spectrum(normal_operator(w, lambda), dense_operator(a.inverse()));
  ASSERT_EQ(s.size(), 64u);
  for (auto v : s.eigenvalues) {
    EXPECT_NEAR(v.real(), 1.0, 1e-10);
    EXPECT_NEAR(v.imag(), 0.0, 1e-10);
  }
  EXPECT_NEAR(s.condition_number(), 1.0, 1e-10);
}

TEST(ErrorPropagator, WtgMatchesAssembledCycle) {
  const auto w = projector(16, 24);
  for (double lambda : {0.0, 0.4}) {
    const auto a = normal_operator(w, lambda);
    const DenseMatrix ad = assemble_dense(a);
    const auto h = std::make_shared<const WmgHierarchy>(build_wmg_hierarchy(w, 16, {2, lambda, false}));
    for (auto mode : {WtgMode::multiplicative, WtgMode::hybrid}) {
      PreconditionedSpectrumOptions opts;
      opts.mode = mode;
      const DenseMatrix g = dense_error_propagator(*w, 16, lambda, PreconditionerKind::wtg, opts);
      const DenseMatrix m_inv = assemble_dense(wmg_preconditioner(h, mode));
      const DenseMatrix expected = DenseMatrix::Identity(256, 256) - m_inv * ad;
      EXPECT_LE((g - expected).cwiseAbs().maxCoeff(), 1e-9) << to_string(mode) << " lambda " << lambda;
    }
  }
}

TEST(ErrorPropagator, TgWithDiagonalSmootherMatchesAssembledCycle) {
  const auto w = projector(16, 24);
  const double lambda = 0.3;
  const DenseMatrix ad = assemble_dense(normal_operator(w, lambda));
  for (SmoothingSteps steps : {SmoothingSteps{1, 1}, SmoothingSteps{2, 0}, SmoothingSteps{0, 2}}) {
    PreconditionedSpectrumOptions opts;
    opts.steps = steps;
    opts.smoother = TgSmoother::normal_diagonal;
    const DenseMatrix g = dense_error_propagator(*w, 16, lambda, PreconditionerKind::tg, opts);
    const DenseMatrix m_inv = assemble_dense(classical_tg_preconditioner(w, 16, lambda, steps));
    EXPECT_LE((g - (DenseMatrix::Identity(256, 256) - m_inv * ad)).cwiseAbs().maxCoeff(), 1e-9);
  }
}

TEST(ErrorPropagator, TgWithSirtSmootherMatchesDenseFormula) {
  const auto w = projector(16, 24);
  const double lambda = 0.05;
  const DenseMatrix wd = to_dense(*w);
  const auto scaling = sirt_scaling(*w);
  const Eigen::Map<const Vec> c(scaling.c.data(), 256), r(scaling.r.data(), static_cast<Eigen::Index>(scaling.r.size()));
  const DenseMatrix id = DenseMatrix::Identity(256, 256);
  const DenseMatrix a = wd.transpose() * wd + lambda * id;
  const DenseMatrix s = id - c.asDiagonal() * wd.transpose() * r.asDiagonal() * wd - lambda * DenseMatrix(c.asDiagonal());
  const DenseMatrix rl = to_dense(build_intergrid_set(16)[Band::LL]);
  const DenseMatrix cgc = id - rl.transpose() * (rl * a * rl.transpose()).inverse() * rl * a;
  const DenseMatrix g = dense_error_propagator(*w, 16, lambda, PreconditionerKind::tg, {});
  EXPECT_LE((g - s * cgc * s).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(PreconditionedSpectrum, WtgSpectrumMatchesOperatorForm) {
  const auto w = projector(16, 24);
  const double lambda = 0.2;
  const auto h = std::make_shared<const WmgHierarchy>(build_wmg_hierarchy(w, 16, {2, lambda, false}));
  PreconditionedSpectrumOptions opts;
  opts.mode = WtgMode::hybrid;
  const auto dense = preconditioned_spectrum(*w, 16, lambda, PreconditionerKind::wtg, opts);
  const auto op = preconditioned_spectrum(normal_operator(w, lambda), wmg_preconditioner(h, WtgMode::hybrid));
  EXPECT_EQ(dense.source, SpectrumSource::wtg_preconditioned);
  EXPECT_EQ(dense.variant, "hybrid");
  EXPECT_NEAR(dense.condition_number(), op.condition_number(), 1e-6 * op.condition_number());
  EXPECT_NEAR(dense.spectral_radius(), op.spectral_radius(), 1e-8);
}

TEST(PreconditionedSpectrum, VariantLabels) {
  const auto w = projector(8, 12);
  PreconditionedSpectrumOptions opts;
  opts.steps = {1, 2};
  EXPECT_EQ(preconditioned_spectrum(*w, 8, 0.1, PreconditionerKind::tg, opts).variant, "TG(1,2) smoother=sirt");
  EXPECT_EQ(preconditioned_spectrum(*w, 8, 0.1, PreconditionerKind::wtg).variant, "multiplicative");
}

TEST(PreconditionedSpectrum, SingularSystemIsReported) {
  const auto w = projector(8, 1);
  EXPECT_THROW(preconditioned_spectrum(*w, 8, 0.0, PreconditionerKind::wtg), SingularOperator);
  EXPECT_THROW(dense_error_propagator(*w, 8, 0.0, PreconditionerKind::tg), SingularOperator);
}

TEST(EigenmodeImage, SignAndNorm) {
  const auto w = projector(8, 12);
  const auto s = normal_spectrum(*w, 0.0, true);
  for (std::size_t k = 0; k < s.size(); ++k) {
    const auto img = eigenmode_image(s, k);
    double norm = 0.0, peak = 0.0;
    for (double v : img) {
      norm += v * v;
      if (std::abs(v) > std::abs(peak)) peak = v;
    }
    EXPECT_NEAR(norm, 1.0, 1e-12);
    EXPECT_GT(peak, 0.0);
  }
  EXPECT_THROW(eigenmode_image(s, s.size()), std::out_of_range);
  EXPECT_THROW(eigenmode_image(normal_spectrum(*w), 0), std::invalid_argument);
}
