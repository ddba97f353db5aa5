#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "wmgtomo/convergence.hpp"
#include "wmgtomo/grid_vector.hpp"
#include "wmgtomo/linear_operator.hpp"
#include "wmgtomo/phantom.hpp"
#include "wmgtomo/sparse.hpp"

namespace wmgtomo {

struct SolverConfig {
  /// Zero is accepted and returns the initial guess with a single log row.
  std::size_t max_iterations = 100;
  /// Stop once ||r_k|| / ||r_0|| < tolerance; zero disables the test.
  double residual_tolerance = 0.0;
  double regularization_lambda = 0.0;
};

inline void validate(const SolverConfig& cfg) {
  if (!(cfg.residual_tolerance >= 0.0)) throw std::invalid_argument("residual tolerance must be >= 0");
  if (!(cfg.regularization_lambda >= 0.0)) throw std::invalid_argument("lambda must be >= 0");
}

struct SolveResult {
  std::vector<double> x;
  ConvergenceRecord record;
};

/// Diagonals of C (inverse column sums) and R (inverse row sums); empty sums map to 0.
struct SirtScaling {
  std::vector<double> c;
  std::vector<double> r;
};

inline SirtScaling sirt_scaling(const SparseOperator& w) {
  auto invert = [](std::vector<double> v) {
    for (auto& x : v) x = x != 0.0 ? 1.0 / x : 0.0;
    return v;
  };
  return {invert(column_sums(w)), invert(row_sums(w))};
}

namespace detail {

inline double norm2(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

class Logger {
 public:
  Logger(ConvergenceRecord& record, std::optional<std::span<const double>> x_ex)
      : record_(record), x_ex_(x_ex) {}

  void log(std::size_t k, double rel_res, std::span<const double> x) {
    ConvergenceRecord::Entry e;
    e.iteration = k;
    e.rel_res = rel_res;
    if (x_ex_) {
      auto m = error_metrics(x, *x_ex_);
      e.rel_l2 = m.rel_l2;
      e.rel_linf = m.rel_linf;
    }
    e.seconds = clock_.seconds();
    record_.entries.push_back(e);
  }

 private:
  ConvergenceRecord& record_;
  std::optional<std::span<const double>> x_ex_;
  Stopwatch clock_;
};

}  // namespace detail

/**
 * SIRT: x_{k+1} = x_k + C W^T R (b - W x_k) - lambda C x_k.
 *
 * The logged residual is the data misfit ||b - W x_k||_2 / ||b - W x_0||_2.
 * C W^T R W is never formed; each step costs one product with W and one with W^T.
 */
inline SolveResult sirt_solve(const SparseOperator& w, const SirtScaling& scaling,
                              std::span<const double> b, std::span<const double> x0,
                              const SolverConfig& cfg,
                              std::optional<std::span<const double>> x_ex = std::nullopt) {
  validate(cfg);
  require_size(b.size(), w.n_rows, "sirt_solve(b)");
  require_size(x0.size(), w.n_cols, "sirt_solve(x0)");
  require_size(scaling.c.size(), w.n_cols, "sirt_solve(C)");
  require_size(scaling.r.size(), w.n_rows, "sirt_solve(R)");
  if (x_ex) require_size(x_ex->size(), w.n_cols, "sirt_solve(x_ex)");

  SolveResult out;
  out.x.assign(x0.begin(), x0.end());
  detail::Logger logger(out.record, x_ex);
  const double lambda = cfg.regularization_lambda;

  std::vector<double> residual(w.n_rows);
  std::vector<double> update(w.n_cols);
  multiply(w, out.x, residual);
  for (std::size_t i = 0; i < residual.size(); ++i) residual[i] = b[i] - residual[i];
  const double r0 = detail::norm2(residual);
  logger.log(0, 1.0, out.x);
  if (r0 == 0.0 && lambda == 0.0) {
    out.record.status = SolveStatus::converged;
    return out;
  }

  for (std::size_t k = 1; k <= cfg.max_iterations; ++k) {
    for (std::size_t i = 0; i < residual.size(); ++i) residual[i] *= scaling.r[i];
    multiply_transpose(w, residual, update);
    for (std::size_t j = 0; j < out.x.size(); ++j)
      out.x[j] += scaling.c[j] * (update[j] - lambda * out.x[j]);

    multiply(w, out.x, residual);
    for (std::size_t i = 0; i < residual.size(); ++i) residual[i] = b[i] - residual[i];
    const double rel = r0 > 0.0 ? detail::norm2(residual) / r0 : 0.0;
    logger.log(k, rel, out.x);
    if (rel < cfg.residual_tolerance) {
      out.record.status = SolveStatus::converged;
      return out;
    }
  }
  out.record.status = SolveStatus::max_iterations;
  return out;
}

inline SolveResult sirt_solve(const SparseOperator& w, std::span<const double> b,
                              std::span<const double> x0, const SolverConfig& cfg,
                              std::optional<std::span<const double>> x_ex = std::nullopt) {
  return sirt_solve(w, sirt_scaling(w), b, x0, cfg, x_ex);
}

/// Breakdown threshold; each inner product is compared against the norms of its factors.
inline constexpr double kBreakdownTolerance = 1e-14;

/**
 * Right-preconditioned BiCGStab (van der Vorst) for op x = f.
 *
 * The preconditioner M^{-1} replaces each "solve M z = v" step, so the iterate
 * stays in the original variable and the recurrence residual is the true
 * residual f - op x. Logged values are ||r_k|| / ||r_0||.
 */
inline SolveResult bicgstab_solve(const LinearOperator& op, std::span<const double> f,
                                  const LinearOperator* precond, std::span<const double> x0,
                                  const SolverConfig& cfg,
                                  std::optional<std::span<const double>> x_ex = std::nullopt) {
  validate(cfg);
  const std::size_t n = op.dim();
  require_size(f.size(), n, "bicgstab_solve(f)");
  require_size(x0.size(), n, "bicgstab_solve(x0)");
  if (precond) require_size(precond->dim(), n, "bicgstab_solve(preconditioner)");
  if (x_ex) require_size(x_ex->size(), n, "bicgstab_solve(x_ex)");

  using detail::dot;
  using detail::norm2;

  SolveResult out;
  out.x.assign(x0.begin(), x0.end());
  auto& x = out.x;
  detail::Logger logger(out.record, x_ex);

  auto precondition = [&](std::span<const double> in, std::span<double> result) {
    if (precond) {
      precond->apply(in, result);
    } else {
      std::copy(in.begin(), in.end(), result.begin());
    }
  };

  std::vector<double> r(n), r_hat(n), p(n, 0.0), v(n, 0.0), p_hat(n), s(n), s_hat(n), t(n);
  op.apply(x, r);
  for (std::size_t i = 0; i < n; ++i) r[i] = f[i] - r[i];
  r_hat = r;
  const double r0 = norm2(r);
  logger.log(0, 1.0, x);
  if (r0 == 0.0) {
    out.record.status = SolveStatus::converged;
    return out;
  }
  double rho = 1.0, alpha = 1.0, omega = 1.0;
  for (std::size_t k = 1; k <= cfg.max_iterations; ++k) {
    const double rho_next = dot(r_hat, r);
    if (std::abs(rho_next) < kBreakdownTolerance * r0 * norm2(r)) {
      out.record.status = SolveStatus::breakdown;
      return out;
    }
    const double beta = (rho_next / rho) * (alpha / omega);
    rho = rho_next;
    for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + beta * (p[i] - omega * v[i]);

    precondition(p, p_hat);
    op.apply(p_hat, v);
    const double rv = dot(r_hat, v);
    if (std::abs(rv) < kBreakdownTolerance * norm2(r_hat) * norm2(v) || rv == 0.0) {
      out.record.status = SolveStatus::breakdown;
      return out;
    }
    alpha = rho / rv;
    for (std::size_t i = 0; i < n; ++i) s[i] = r[i] - alpha * v[i];

    const double s_norm = norm2(s);
    if (s_norm == 0.0 || s_norm / r0 < cfg.residual_tolerance) {
      for (std::size_t i = 0; i < n; ++i) x[i] += alpha * p_hat[i];
      r = s;
      logger.log(k, s_norm / r0, x);
      out.record.status = SolveStatus::converged;
      return out;
    }

    precondition(s, s_hat);
    op.apply(s_hat, t);
    const double tt = dot(t, t);
    const double ts = dot(t, s);
    if (tt == 0.0 || std::abs(ts) < kBreakdownTolerance * std::sqrt(tt) * s_norm) {
      // omega would vanish: keep the half step and stop
      for (std::size_t i = 0; i < n; ++i) x[i] += alpha * p_hat[i];
      logger.log(k, s_norm / r0, x);
      out.record.status = SolveStatus::breakdown;
      return out;
    }
    omega = ts / tt;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] += alpha * p_hat[i] + omega * s_hat[i];
      r[i] = s[i] - omega * t[i];
    }
    const double rel = norm2(r) / r0;
    logger.log(k, rel, x);
    if (rel < cfg.residual_tolerance) {
      out.record.status = SolveStatus::converged;
      return out;
    }
  }
  out.record.status = SolveStatus::max_iterations;
  return out;
}

}  // namespace wmgtomo
