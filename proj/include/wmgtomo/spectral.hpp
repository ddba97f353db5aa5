#pragma once

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wmgtomo/dense.hpp"
#include "wmgtomo/haar.hpp"
#include "wmgtomo/linear_operator.hpp"
#include "wmgtomo/solvers.hpp"
#include "wmgtomo/sparse.hpp"
#include "wmgtomo/two_grid.hpp"
#include "wmgtomo/wmg.hpp"

namespace wmgtomo {

/// Largest dimension assemble_dense accepts without `force`.
inline constexpr std::size_t kDenseAssemblyLimit = 6400;

/// Column j is op(e_j).
inline DenseMatrix assemble_dense(const LinearOperator& op, bool force = false) {
  const std::size_t n = op.dim();
  if (n > kDenseAssemblyLimit && !force) {
    throw std::invalid_argument("assemble_dense: dimension " + std::to_string(n) + " exceeds the guard of " +
                                std::to_string(kDenseAssemblyLimit) + " (pass force to override)");
  }
  const auto dim = static_cast<Eigen::Index>(n);
  DenseMatrix d(dim, dim);
  std::vector<double> basis(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    basis[j] = 1.0;
    op.apply(basis, std::span<double>(d.col(static_cast<Eigen::Index>(j)).data(), n));
    basis[j] = 0.0;
  }
  return d;
}

enum class SpectrumSource { sirt_s, normal_a, coarse_a, tg_preconditioned, wtg_preconditioned, preconditioned };

inline const char* to_string(SpectrumSource s) {
  switch (s) {
    case SpectrumSource::sirt_s: return "sirt-S";
    case SpectrumSource::normal_a: return "normal-A";
    case SpectrumSource::coarse_a: return "coarse-A";
    case SpectrumSource::tg_preconditioned: return "tg-preconditioned";
    case SpectrumSource::wtg_preconditioned: return "wtg-preconditioned";
    case SpectrumSource::preconditioned: return "preconditioned";
  }
  return "unknown";
}

/**
 * Eigenvalues sorted by ascending magnitude (ties broken by real, then
 * imaginary part). Eigenvectors, when present, are the columns of a real
 * matrix in the same order; they are only computed for operators similar to
 * a symmetric matrix.
 */
struct Spectrum {
  std::vector<std::complex<double>> eigenvalues;
  std::optional<DenseMatrix> eigenvectors;
  SpectrumSource source = SpectrumSource::normal_a;
  /// Free-form qualifier written to output metadata, e.g. the WTG mode.
  std::string variant;

  std::size_t size() const { return eigenvalues.size(); }

  /// max |lambda| / min |lambda|; infinity for a singular operator.
  double condition_number() const {
    if (eigenvalues.empty()) return std::numeric_limits<double>::quiet_NaN();
    const double lo = std::abs(eigenvalues.front());
    const double hi = std::abs(eigenvalues.back());
    return lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
  }

  double spectral_radius() const { return eigenvalues.empty() ? 0.0 : std::abs(eigenvalues.back()); }
};

namespace detail {

inline std::vector<std::size_t> magnitude_order(const std::vector<std::complex<double>>& ev) {
  std::vector<std::size_t> order(ev.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const double ma = std::abs(ev[a]), mb = std::abs(ev[b]);
    if (ma != mb) return ma < mb;
    if (ev[a].real() != ev[b].real()) return ev[a].real() < ev[b].real();
    return ev[a].imag() < ev[b].imag();
  });
  return order;
}

inline Spectrum sorted_spectrum(std::vector<std::complex<double>> ev, std::optional<DenseMatrix> vectors,
                                SpectrumSource source) {
  const auto order = magnitude_order(ev);
  Spectrum s;
  s.source = source;
  s.eigenvalues.reserve(ev.size());
  for (auto k : order) s.eigenvalues.push_back(ev[k]);
  if (vectors) {
    DenseMatrix sorted(vectors->rows(), vectors->cols());
    for (std::size_t k = 0; k < order.size(); ++k)
      sorted.col(static_cast<Eigen::Index>(k)) = vectors->col(static_cast<Eigen::Index>(order[k]));
    s.eigenvectors = std::move(sorted);
  }
  return s;
}

inline Spectrum symmetric_spectrum(const DenseMatrix& a, SpectrumSource source, bool with_vectors) {
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(a, with_vectors ? Eigen::ComputeEigenvectors
                                                                : Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw std::runtime_error("symmetric eigensolver failed to converge");
  std::vector<std::complex<double>> ev(static_cast<std::size_t>(a.rows()));
  for (Eigen::Index i = 0; i < a.rows(); ++i) ev[static_cast<std::size_t>(i)] = es.eigenvalues()[i];
  std::optional<DenseMatrix> vectors;
  if (with_vectors) vectors = es.eigenvectors();
  return sorted_spectrum(std::move(ev), std::move(vectors), source);
}

inline Spectrum general_spectrum(const DenseMatrix& a, SpectrumSource source) {
  Eigen::EigenSolver<DenseMatrix> es(a, false);
  if (es.info() != Eigen::Success) throw std::runtime_error("eigensolver failed to converge");
  std::vector<std::complex<double>> ev(static_cast<std::size_t>(a.rows()));
  for (Eigen::Index i = 0; i < a.rows(); ++i) ev[static_cast<std::size_t>(i)] = es.eigenvalues()[i];
  return sorted_spectrum(std::move(ev), std::nullopt, source);
}

}  // namespace detail

/**
 * Spectrum of the SIRT iteration matrix S = I - C W^T R W.
 *
 * S is similar to I - C^{1/2} W^T R W C^{1/2}, which is symmetric, so the
 * eigenvalues are real and a symmetric solver is used. Eigenvectors of S are
 * C^{1/2} u for eigenvectors u of the symmetric form, normalized.
 */
inline Spectrum sirt_spectrum(const SparseOperator& w, bool with_vectors = false) {
  if (w.n_cols > kDenseAssemblyLimit) throw std::invalid_argument("sirt_spectrum: problem too large for dense analysis");
  const auto scaling = sirt_scaling(w);
  const auto n = static_cast<Eigen::Index>(w.n_cols);
  // C^{1/2} W^T R^{1/2} as (R^{1/2} W C^{1/2})^T, then a Gram product
  SparseBuilder builder(w.n_cols);
  for (std::size_t i = 0; i < w.n_rows; ++i) {
    const double ri = std::sqrt(scaling.r[i]);
    auto cols = w.row_cols(i);
    auto vals = w.row_values(i);
    for (std::size_t k = 0; k < cols.size(); ++k) builder.add(cols[k], ri * vals[k] * std::sqrt(scaling.c[cols[k]]));
    builder.end_row();
  }
  DenseMatrix b = -gram(std::move(builder).finish());
  b.diagonal().array() += 1.0;
  Spectrum s = detail::symmetric_spectrum(b, SpectrumSource::sirt_s, with_vectors);
  if (s.eigenvectors) {
    auto& v = *s.eigenvectors;
    for (Eigen::Index k = 0; k < n; ++k) {
      Eigen::VectorXd u = v.col(k);
      Eigen::VectorXd mapped = u;
      for (Eigen::Index j = 0; j < n; ++j) mapped[j] *= std::sqrt(scaling.c[static_cast<std::size_t>(j)]);
      const double norm = mapped.norm();
      // columns outside every ray have c_j = 0 and keep their unit vector
      v.col(k) = norm > 1e-300 ? Eigen::VectorXd(mapped / norm) : u;
    }
  }
  return s;
}

/// Spectrum of W^T W + lambda I.
inline Spectrum normal_spectrum(const SparseOperator& w, double lambda = 0.0, bool with_vectors = false) {
  if (w.n_cols > kDenseAssemblyLimit) throw std::invalid_argument("normal_spectrum: problem too large for dense analysis");
  return detail::symmetric_spectrum(gram(w, lambda), SpectrumSource::normal_a, with_vectors);
}

/// Spectrum of the Galerkin operator R_band (W^T W + lambda I) R_band^T on an n x n image.
inline Spectrum coarse_spectrum(const SparseOperator& w, std::size_t n, Band band, double lambda = 0.0,
                                bool with_vectors = false) {
  require_size(w.n_cols, n * n, "coarse_spectrum(W columns)");
  if (w.n_cols / 4 > kDenseAssemblyLimit) throw std::invalid_argument("coarse_spectrum: problem too large for dense analysis");
  const auto factor = spgemm(w, transpose(build_intergrid_set(n)[band]));
  Spectrum s = detail::symmetric_spectrum(gram(factor, lambda), SpectrumSource::coarse_a, with_vectors);
  s.variant = to_string(band);
  return s;
}

/**
 * Spectrum of the right-preconditioned operator A M^{-1} from dense assemblies
 * of A and M^{-1}. This equals the spectrum of I - G for the error propagator
 * G = I - M^{-1} A (the two products are similar).
 */
inline Spectrum preconditioned_spectrum(const LinearOperator& a, const LinearOperator& m_inv) {
  require_size(m_inv.dim(), a.dim(), "preconditioned_spectrum");
  const DenseMatrix ad = assemble_dense(a);
  const DenseMatrix md = assemble_dense(m_inv);
  return detail::general_spectrum(ad * md, SpectrumSource::preconditioned);
}

/// Smoother inside the dense TG error propagator.
enum class TgSmoother {
  /// SIRT iteration matrix S = I - C W^T R W - lambda C.
  sirt,
  /// Diagonally scaled Richardson on the normal equations, I - D A with D = diag(1 / (A 1)),
  /// which is what ClassicalTwoGrid applies.
  normal_diagonal,
};

inline const char* to_string(TgSmoother s) { return s == TgSmoother::sirt ? "sirt" : "normal-diagonal"; }

enum class PreconditionerKind { tg, wtg };

struct PreconditionedSpectrumOptions {
  SmoothingSteps steps{};
  TgSmoother smoother = TgSmoother::sirt;
  WtgMode mode = WtgMode::multiplicative;
};

/// Raised when W^T W + lambda I is singular, so the preconditioned operator is undefined.
class SingularOperator : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/**
 * Dense two-grid error propagators on an n x n image with exact coarse solves:
 *   cgc_b = I - R_b^T (R_b A R_b^T)^{-1} R_b A
 *   TG    = S^post cgc_LL S^pre
 *   WTG   = cgc_HH cgc_HL cgc_LH cgc_LL                       (multiplicative)
 *   WTG   = (I - sum_{b != LL} R_b^T A_b^{-1} R_b A) cgc_LL   (hybrid)
 */
inline DenseMatrix dense_error_propagator(const SparseOperator& w, std::size_t n, double lambda,
                                          PreconditionerKind kind, const PreconditionedSpectrumOptions& opts = {}) {
  require_even(n, "dense_error_propagator");
  require_size(w.n_cols, n * n, "dense_error_propagator(W columns)");
  if (w.n_cols > kDenseAssemblyLimit) throw std::invalid_argument("dense_error_propagator: problem too large");
  const auto dim = static_cast<Eigen::Index>(w.n_cols);
  const DenseMatrix a = gram(w, lambda);
  const DenseMatrix id = DenseMatrix::Identity(dim, dim);
  const auto set = build_intergrid_set(n);

  // R_b^T A_b^{-1} R_b A
  auto coarse_projection = [&](Band b) -> DenseMatrix {
    const DenseMatrix r = to_dense(set[b]);
    const DenseMatrix ra = r * a;
    DenseFactorization f;
    try {
      f = cholesky_factor(ra * r.transpose());
    } catch (const NotPositiveDefinite& e) {
      throw SingularOperator(std::string("coarse operator ") + to_string(b) + " is singular: " + e.what());
    }
    DenseMatrix solved = ra;
    for (Eigen::Index j = 0; j < solved.cols(); ++j) f.solve_in_place(std::span<double>(solved.col(j).data(), static_cast<std::size_t>(solved.rows())));
    return r.transpose() * solved;
  };

  if (kind == PreconditionerKind::tg) {
    DenseMatrix s;
    if (opts.smoother == TgSmoother::sirt) {
      const auto scaling = sirt_scaling(w);
      const Eigen::Map<const Eigen::VectorXd> c(scaling.c.data(), dim);
      const Eigen::Map<const Eigen::VectorXd> rr(scaling.r.data(), static_cast<Eigen::Index>(scaling.r.size()));
      const DenseMatrix wd = to_dense(w);
      s = id - c.asDiagonal() * (wd.transpose() * rr.asDiagonal() * wd);
      s -= lambda * DenseMatrix(c.asDiagonal());
    } else {
      const Eigen::VectorXd a_ones = a * Eigen::VectorXd::Ones(dim);
      const Eigen::VectorXd d = a_ones.unaryExpr([](double v) { return v > 0.0 ? 1.0 / v : 0.0; });
      s = id - d.asDiagonal() * a;
    }
    DenseMatrix g = id - coarse_projection(Band::LL);
    for (std::size_t k = 0; k < opts.steps.pre; ++k) g = g * s;
    for (std::size_t k = 0; k < opts.steps.post; ++k) g = s * g;
    return g;
  }

  const DenseMatrix cgc_ll = id - coarse_projection(Band::LL);
  if (opts.mode == WtgMode::multiplicative) {
    DenseMatrix g = cgc_ll;
    for (auto b : {Band::LH, Band::HL, Band::HH}) g = (id - coarse_projection(b)) * g;
    return g;
  }
  DenseMatrix rest = id;
  for (auto b : {Band::LH, Band::HL, Band::HH}) rest -= coarse_projection(b);
  return rest * cgc_ll;
}

/**
 * Spectrum of I - A G A^{-1} for the TG or WTG error propagator G. It is
 * similar to I - G, so A^{-1} is never formed; A is still Cholesky-checked so a
 * singular system is reported rather than analysed.
 */
inline Spectrum preconditioned_spectrum(const SparseOperator& w, std::size_t n, double lambda, PreconditionerKind kind,
                                        const PreconditionedSpectrumOptions& opts = {}) {
  try {
    (void)cholesky_factor(gram(w, lambda));
  } catch (const NotPositiveDefinite&) {
    throw SingularOperator("preconditioned_spectrum: W^T W + lambda I is singular");
  }
  const DenseMatrix g = dense_error_propagator(w, n, lambda, kind, opts);
  const DenseMatrix m = DenseMatrix::Identity(g.rows(), g.cols()) - g;
  Spectrum s = detail::general_spectrum(m, kind == PreconditionerKind::tg ? SpectrumSource::tg_preconditioned
                                                                          : SpectrumSource::wtg_preconditioned);
  if (kind == PreconditionerKind::tg) {
    s.variant = std::string("TG(") + std::to_string(opts.steps.pre) + "," + std::to_string(opts.steps.post) +
                ") smoother=" + to_string(opts.smoother);
  } else {
    s.variant = to_string(opts.mode);
  }
  return s;
}

/// Largest |imaginary part| among the eigenvalues.
inline double max_imaginary(const Spectrum& s) {
  double m = 0.0;
  for (auto v : s.eigenvalues) m = std::max(m, std::abs(v.imag()));
  return m;
}

/// Eigenvector k as an image, unit norm, signed so its largest-magnitude entry is positive.
inline std::vector<double> eigenmode_image(const Spectrum& s, std::size_t k) {
  if (!s.eigenvectors) throw std::invalid_argument("eigenmode_image: spectrum was computed without eigenvectors");
  if (k >= s.size()) throw std::out_of_range("eigenmode_image: index out of range");
  Eigen::VectorXd v = s.eigenvectors->col(static_cast<Eigen::Index>(k));
  Eigen::Index at = 0;
  v.cwiseAbs().maxCoeff(&at);
  if (v[at] < 0.0) v = -v;
  return {v.data(), v.data() + v.size()};
}

}  // namespace wmgtomo
