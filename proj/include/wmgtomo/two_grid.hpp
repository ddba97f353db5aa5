#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <stdexcept>
#include <vector>

#include "wmgtomo/dense.hpp"
#include "wmgtomo/haar.hpp"
#include "wmgtomo/linear_operator.hpp"
#include "wmgtomo/solvers.hpp"
#include "wmgtomo/sparse.hpp"

namespace wmgtomo {

struct SmoothingSteps {
  std::size_t pre = 1;
  std::size_t post = 1;
};

/**
 * Classical two-grid cycle on A = W^T W + lambda I.
 *
 * Smoothing is the SIRT-type diagonally scaled Richardson step on the normal
 * equations, z += D (v - A z) with D = diag(1 / (A 1)); A is entrywise
 * nonnegative, so D A has spectral radius at most one. The coarse correction
 * uses only the LL band with the Galerkin operator Gram(W R_LL^T) + lambda I,
 * solved by Cholesky.
 */
class ClassicalTwoGrid {
 public:
  ClassicalTwoGrid(std::shared_ptr<const SparseOperator> w, std::size_t n, double lambda, SmoothingSteps steps)
      : w_(std::move(w)), n_(n), lambda_(lambda), steps_(steps) {
    require_even(n, "ClassicalTwoGrid");
    require_size(w_->n_cols, n * n, "ClassicalTwoGrid(W columns)");
    coarse_factor_ = spgemm(*w_, transpose(build_intergrid_set(n)[Band::LL]));
    coarse_ = cholesky_factor(gram(coarse_factor_, lambda));

    const std::vector<double> ones(w_->n_cols, 1.0);
    std::vector<double> a_ones(w_->n_cols);
    apply_normal(ones, a_ones);
    scaling_.resize(a_ones.size());
    for (std::size_t j = 0; j < a_ones.size(); ++j) scaling_[j] = a_ones[j] > 0.0 ? 1.0 / a_ones[j] : 0.0;
  }

  std::size_t dim() const { return n_ * n_; }
  std::span<const double> smoother_scaling() const { return scaling_; }

  /// Approximate solve of A z = v starting from z = 0.
  void apply(std::span<const double> v, std::span<double> z) const {
    require_size(v.size(), dim(), "ClassicalTwoGrid::apply(v)");
    require_size(z.size(), dim(), "ClassicalTwoGrid::apply(z)");
    std::fill(z.begin(), z.end(), 0.0);
    std::vector<double> residual(dim());
    for (std::size_t s = 0; s < steps_.pre; ++s) smooth(v, z, residual);

    residual_of(v, z, residual);
    std::vector<double> coarse((n_ / 2) * (n_ / 2));
    restrict_band(Band::LL, n_, residual, coarse);
    coarse_.solve_in_place(coarse);
    prolong_add_band(Band::LL, n_, coarse, z);

    for (std::size_t s = 0; s < steps_.post; ++s) smooth(v, z, residual);
  }

 private:
  void apply_normal(std::span<const double> x, std::span<double> out) const {
    std::vector<double> projected(w_->n_rows);
    multiply(*w_, x, projected);
    multiply_transpose(*w_, projected, out);
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += lambda_ * x[j];
  }

  void residual_of(std::span<const double> v, std::span<const double> z, std::span<double> out) const {
    apply_normal(z, out);
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = v[j] - out[j];
  }

  void smooth(std::span<const double> v, std::span<double> z, std::span<double> scratch) const {
    residual_of(v, z, scratch);
    for (std::size_t j = 0; j < z.size(); ++j) z[j] += scaling_[j] * scratch[j];
  }

  std::shared_ptr<const SparseOperator> w_;
  std::size_t n_;
  double lambda_;
  SmoothingSteps steps_;
  SparseOperator coarse_factor_;
  DenseFactorization coarse_;
  std::vector<double> scaling_;
};

inline LinearOperator classical_tg_preconditioner(std::shared_ptr<const SparseOperator> w, std::size_t n,
                                                  double lambda, SmoothingSteps steps = {}) {
  auto tg = std::make_shared<const ClassicalTwoGrid>(std::move(w), n, lambda, steps);
  const std::size_t dim = tg->dim();
  return {dim, [tg](std::span<const double> in, std::span<double> out) { tg->apply(in, out); }};
}

}  // namespace wmgtomo
