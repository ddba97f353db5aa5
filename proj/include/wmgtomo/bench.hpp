#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "wmgtomo/convergence.hpp"
#include "wmgtomo/geometry.hpp"
#include "wmgtomo/grid_vector.hpp"
#include "wmgtomo/linear_operator.hpp"
#include "wmgtomo/phantom.hpp"
#include "wmgtomo/solvers.hpp"
#include "wmgtomo/sparse.hpp"
#include "wmgtomo/two_grid.hpp"
#include "wmgtomo/wmg.hpp"

namespace wmgtomo {

enum class SolverKind { sirt, bicgstab, tg_bicgstab, wmg_bicgstab };

inline const char* to_string(SolverKind s) {
  switch (s) {
    case SolverKind::sirt: return "sirt";
    case SolverKind::bicgstab: return "bicgstab";
    case SolverKind::tg_bicgstab: return "tg-bicgstab";
    case SolverKind::wmg_bicgstab: return "wmg-bicgstab";
  }
  return "unknown";
}

inline SolverKind parse_solver(std::string_view name) {
  for (auto s : {SolverKind::sirt, SolverKind::bicgstab, SolverKind::tg_bicgstab, SolverKind::wmg_bicgstab})
    if (name == to_string(s)) return s;
  throw std::invalid_argument("unknown solver '" + std::string(name) + "'");
}

struct RunOptions {
  SolverKind solver = SolverKind::wmg_bicgstab;
  std::size_t iterations = 100;
  double tolerance = 0.0;
  double lambda = 0.0;
  std::size_t levels = 3;
  WtgMode mode = WtgMode::hybrid;
  SmoothingSteps tg_steps{};
};

struct RunOutcome {
  SolveResult result;
  /// Preconditioner construction (hierarchy or TG coarse factor); zero otherwise.
  double setup_seconds = 0.0;
};

/**
 * Reconstructs from sinogram b with x0 = 0. SIRT works on W x = b directly;
 * the Krylov solvers run on (W^T W + lambda I) x = W^T b.
 */
inline RunOutcome run_solver(const std::shared_ptr<const SparseOperator>& w, std::size_t n, std::span<const double> b,
                             const RunOptions& opts, std::optional<std::span<const double>> x_ex = std::nullopt) {
  require_size(w->n_cols, n * n, "run_solver(W columns)");
  require_size(b.size(), w->n_rows, "run_solver(b)");
  SolverConfig cfg;
  cfg.max_iterations = opts.iterations;
  cfg.residual_tolerance = opts.tolerance;
  cfg.regularization_lambda = opts.lambda;
  validate(cfg);
  const std::vector<double> x0(w->n_cols, 0.0);

  RunOutcome out;
  if (opts.solver == SolverKind::sirt) {
    out.result = sirt_solve(*w, b, x0, cfg, x_ex);
    return out;
  }

  const auto rhs = multiply_transpose(*w, b);
  const auto op = normal_operator(w, opts.lambda);
  std::optional<LinearOperator> precond;
  Stopwatch setup;
  if (opts.solver == SolverKind::tg_bicgstab) {
    precond = classical_tg_preconditioner(w, n, opts.lambda, opts.tg_steps);
  } else if (opts.solver == SolverKind::wmg_bicgstab) {
    auto h = std::make_shared<const WmgHierarchy>(build_wmg_hierarchy(w, n, {opts.levels, opts.lambda, false}));
    precond = wmg_preconditioner(std::move(h), opts.mode);
  }
  out.setup_seconds = setup.seconds();
  out.result = bicgstab_solve(op, rhs, precond ? &*precond : nullptr, x0, cfg, x_ex);
  return out;
}

/// The 160 x 160 phantom under 400 angles used for every table.
struct BenchmarkSpec {
  long n = 160;
  long angles = 400;
  ProjectorKernel kernel = ProjectorKernel::line;
  std::size_t levels = 3;
  WtgMode mode = WtgMode::hybrid;
  std::uint64_t seed = 1;
};

struct BenchmarkProblem {
  Geometry geometry;
  std::shared_ptr<const SparseOperator> w;
  GridVector x_exact;
  GridVector b;  // W x_exact, plus noise when alpha > 0
};

inline BenchmarkProblem make_benchmark_problem(const BenchmarkSpec& spec, double alpha) {
  BenchmarkProblem p;
  p.geometry = build_geometry(spec.n, spec.n, spec.angles);
  p.w = std::make_shared<const SparseOperator>(build_projector(p.geometry, spec.kernel));
  p.x_exact = shepp_logan(spec.n);
  p.b = add_noise(apply(*p.w, p.x_exact), alpha, spec.seed);
  return p;
}

/// Error criterion the noise-free tables report iteration counts against.
inline constexpr double kTableErrorCriterion = 0.02;
/// Relative tolerance on the reference rel-L2 values.
inline constexpr double kTableWindow = 0.30;

struct TableRow {
  SolverKind solver;
  std::size_t iterations;
  double lambda;
  double reference_l2;
  double reference_linf;
};

struct TableSpec {
  int table = 1;
  double alpha = 0.0;
  std::vector<TableRow> rows;
};

/// Reference rows: iteration budget, lambda, and the errors the windows are centered on.
inline TableSpec table_spec(int table) {
  switch (table) {
    case 1:
      return {1, 0.0,
              {{SolverKind::sirt, 1000, 0.0, 0.1015, 0.201},
               {SolverKind::bicgstab, 300, 0.0, 0.0166, 0.0317},
               {SolverKind::wmg_bicgstab, 50, 0.0, 0.0152, 0.0669}}};
    case 2:
      return {2, 0.0,
              {{SolverKind::bicgstab, 300, 0.4, 0.0180, 0.0319},
               {SolverKind::wmg_bicgstab, 50, 0.4, 0.0165, 0.0399}}};
    case 3:
      return {3, 0.01,
              {{SolverKind::sirt, 1000, 0.001, 0.1385, 0.2697},
               {SolverKind::bicgstab, 100, 10.0, 0.1074, 0.1459},
               {SolverKind::wmg_bicgstab, 14, 10.0, 0.1083, 0.1386}}};
    default:
      throw std::invalid_argument("table must be 1, 2 or 3, got " + std::to_string(table));
  }
}

struct TableResult {
  TableRow row;
  RunOutcome outcome;
  double rel_l2 = 0.0;
  double rel_linf = 0.0;
  std::optional<std::size_t> k_tol;  // first iteration with rel-L2 <= kTableErrorCriterion
  std::size_t k_opt = 0;
  double rel_l2_at_k_opt = 0.0;

  double window_lo() const { return row.reference_l2 * (1.0 - kTableWindow); }
  double window_hi() const { return row.reference_l2 * (1.0 + kTableWindow); }
  bool pass() const { return rel_l2 >= window_lo() && rel_l2 <= window_hi(); }
};

inline TableResult run_table_row(const BenchmarkProblem& p, const BenchmarkSpec& spec, const TableRow& row) {
  RunOptions opts;
  opts.solver = row.solver;
  opts.iterations = row.iterations;
  opts.lambda = row.lambda;
  opts.levels = spec.levels;
  opts.mode = spec.mode;
  TableResult r;
  r.row = row;
  r.outcome = run_solver(p.w, p.geometry.n_pixels_per_side, p.b.values, opts, p.x_exact.span());
  const auto& record = r.outcome.result.record;
  r.rel_l2 = *record.last().rel_l2;
  r.rel_linf = *record.last().rel_linf;
  for (const auto& e : record.entries) {
    if (*e.rel_l2 <= kTableErrorCriterion) {
      r.k_tol = e.iteration;
      break;
    }
  }
  r.k_opt = find_kopt(record);
  r.rel_l2_at_k_opt = *record.entries[r.k_opt].rel_l2;
  return r;
}

}  // namespace wmgtomo
