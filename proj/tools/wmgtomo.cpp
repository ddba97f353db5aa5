// wmgtomo: phantom generation, projection, reconstruction, spectral analysis
// and table reproduction on top of the header-only library.

#include <CLI11.hpp>

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "wmgtomo/wmgtomo.hpp"

namespace fs = std::filesystem;
using namespace wmgtomo;

namespace {

constexpr int kExitArgument = 2;
constexpr int kExitNumerical = 3;

/// Bad input detected after parsing (files, shapes, inconsistent flags).
class ArgumentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Manifest base_manifest(const std::string& command) {
  Manifest m;
  m.set("command", command);
  m.set("software", std::string("wmgtomo ") + std::string(kVersion));
  m.set("timestamp_utc", utc_timestamp());
  return m;
}

std::string manifest_path_for(const std::string& output) { return output + ".manifest"; }

std::optional<Manifest> read_manifest_if_present(const std::string& output) {
  const auto path = manifest_path_for(output);
  if (!fs::exists(path)) return std::nullopt;
  return read_manifest(path);
}

std::size_t square_side(const Array2D& a, const std::string& what) {
  if (a.rows != a.cols || a.rows == 0) throw ArgumentError(what + " is not a non-empty square image");
  return a.rows;
}

Array2D as_image(std::size_t n, std::vector<double> values) {
  return {static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(n), std::move(values)};
}

// ---------------------------------------------------------------- phantom

struct PhantomArgs {
  long n = 0;
  std::string out, pgm;
};

int cmd_phantom(const PhantomArgs& a) {
  const auto x = shepp_logan(a.n);
  const auto img = as_image(static_cast<std::size_t>(a.n), x.values);
  write_array(a.out, img);
  if (!a.pgm.empty()) write_pgm(a.pgm, img);
  auto m = base_manifest("phantom");
  m.set("phantom", "modified-shepp-logan");
  m.set("n", static_cast<long long>(a.n));
  write_manifest(manifest_path_for(a.out), m);
  return 0;
}

// ---------------------------------------------------------------- project

struct ProjectArgs {
  std::string image, out, pgm;
  long angles = 0;
  long detectors = 0;
  std::string kernel = "line";
  std::optional<double> noise;
  std::optional<std::uint64_t> seed;
};

int cmd_project(const ProjectArgs& a) {
  if (a.noise && !a.seed) throw ArgumentError("--noise requires an explicit --seed");
  const auto img = read_array(a.image);
  const std::size_t n = square_side(img, a.image);
  const long detectors = a.detectors > 0 ? a.detectors : static_cast<long>(n);
  const auto kernel = parse_kernel(a.kernel);
  const auto g = build_geometry(static_cast<long>(n), detectors, a.angles);
  const auto w = build_projector(g, kernel);
  const double alpha = a.noise.value_or(0.0);
  const auto b = add_noise(apply(w, image_vector(img.values)), alpha, a.seed.value_or(0));

  const Array2D sino{static_cast<std::uint32_t>(g.n_angles), static_cast<std::uint32_t>(g.n_detectors), b.values};
  write_array(a.out, sino);
  if (!a.pgm.empty()) write_pgm(a.pgm, sino);
  auto m = base_manifest("project");
  m.set("image", a.image);
  m.set("n", n);
  m.set("angles", static_cast<long long>(a.angles));
  m.set("detectors", static_cast<long long>(detectors));
  m.set("kernel", to_string(kernel));
  m.set("noise_alpha", alpha);
  if (a.seed) m.set("noise_seed", std::to_string(*a.seed));
  m.set("noise_generator", std::string(kNoiseGenerator));
  write_manifest(manifest_path_for(a.out), m);
  return 0;
}

// ---------------------------------------------------------------- reconstruct

struct ReconstructArgs {
  std::string sino, out, log, xexact, pgm;
  long n = 0, angles = 0, detectors = 0;
  std::string kernel = "line";
  std::string solver;
  long iters = 0;
  double tol = 0.0;
  double lambda = 0.0;
  std::optional<long> levels;
  bool multiplicative = false;
  bool no_seconds = false;
};

int cmd_reconstruct(const ReconstructArgs& a) {
  const auto solver = parse_solver(a.solver);
  if (a.levels && solver != SolverKind::wmg_bicgstab) throw ArgumentError("--levels requires --solver wmg-bicgstab");
  if (a.multiplicative && solver != SolverKind::wmg_bicgstab)
    throw ArgumentError("--multiplicative-wtg requires --solver wmg-bicgstab");
  if (a.iters < 0) throw ArgumentError("--iters must be >= 0");
  if (a.levels && *a.levels < 2) throw ArgumentError("--levels must be >= 2");

  const auto sino = read_array(a.sino);
  std::optional<Array2D> x_exact;
  if (!a.xexact.empty()) x_exact = read_array(a.xexact);

  const long angles = a.angles > 0 ? a.angles : static_cast<long>(sino.rows);
  const long detectors = a.detectors > 0 ? a.detectors : static_cast<long>(sino.cols);
  if (static_cast<std::uint32_t>(angles) != sino.rows || static_cast<std::uint32_t>(detectors) != sino.cols)
    throw ArgumentError("sinogram is " + std::to_string(sino.rows) + " x " + std::to_string(sino.cols) +
                        " but the geometry asks for " + std::to_string(angles) + " x " + std::to_string(detectors));
  long n = a.n;
  if (n <= 0) n = x_exact ? static_cast<long>(square_side(*x_exact, a.xexact)) : detectors;
  if (x_exact && square_side(*x_exact, a.xexact) != static_cast<std::size_t>(n))
    throw ArgumentError("--xexact image side does not match --n");

  const auto kernel = parse_kernel(a.kernel);
  const auto g = build_geometry(n, detectors, angles);
  const auto w = std::make_shared<const SparseOperator>(build_projector(g, kernel));

  RunOptions opts;
  opts.solver = solver;
  opts.iterations = static_cast<std::size_t>(a.iters);
  opts.tolerance = a.tol;
  opts.lambda = a.lambda;
  opts.levels = static_cast<std::size_t>(a.levels.value_or(3));
  opts.mode = a.multiplicative ? WtgMode::multiplicative : WtgMode::hybrid;
  std::optional<std::span<const double>> x_ex;
  if (x_exact) x_ex = std::span<const double>(x_exact->values);

  RunOutcome run;
  try {
    run = run_solver(w, static_cast<std::size_t>(n), sino.values, opts, x_ex);
  } catch (const SingularCoarseBlock& e) {
    throw NumericalFailure(e.what());
  } catch (const NotPositiveDefinite& e) {
    throw NumericalFailure(e.what());
  }

  const auto img = as_image(static_cast<std::size_t>(n), run.result.x);
  write_array(a.out, img);
  if (!a.pgm.empty()) write_pgm(a.pgm, img);
  if (!a.log.empty()) write_convergence_csv(a.log, run.result.record, !a.no_seconds);

  auto m = base_manifest("reconstruct");
  m.set("sinogram", a.sino);
  if (auto src = read_manifest_if_present(a.sino)) {
    for (const char* key : {"noise_alpha", "noise_seed", "noise_generator"})
      if (auto v = src->get(key)) m.set(key, *v);
  }
  m.set("n", static_cast<long long>(n));
  m.set("angles", static_cast<long long>(angles));
  m.set("detectors", static_cast<long long>(detectors));
  m.set("kernel", to_string(kernel));
  m.set("solver", to_string(solver));
  m.set("lambda", a.lambda);
  m.set("iterations", static_cast<long long>(a.iters));
  m.set("tolerance", a.tol);
  if (solver == SolverKind::wmg_bicgstab) {
    m.set("levels", opts.levels);
    m.set("wtg_mode", to_string(opts.mode));
  }
  if (solver == SolverKind::tg_bicgstab) m.set("tg_smoothing", "1,1");
  m.set("status", to_string(run.result.record.status));
  if (x_exact) m.set("xexact", a.xexact);
  write_manifest(manifest_path_for(a.out), m);

  if (run.result.record.status == SolveStatus::breakdown)
    throw NumericalFailure("BiCGStab broke down at iteration " + std::to_string(run.result.record.last().iteration) +
                           "; the last iterate was written");
  return 0;
}

// ---------------------------------------------------------------- spectrum

struct SpectrumArgs {
  long n = 40, angles = 100, detectors = 0;
  std::string kernel = "line";
  std::string op;
  double lambda = 0.0;
  std::string out;
  std::string band = "LL";
  std::string wtg_mode = "multiplicative";
  std::string tg_smoother = "sirt";
  long modes = 0;
  std::string mode_prefix;
};

Band parse_band(const std::string& s) {
  for (auto b : kBands)
    if (s == to_string(b)) return b;
  throw ArgumentError("unknown band '" + s + "'");
}

int cmd_spectrum(const SpectrumArgs& a) {
  const long detectors = a.detectors > 0 ? a.detectors : a.n;
  const auto kernel = parse_kernel(a.kernel);
  const auto g = build_geometry(a.n, detectors, a.angles);
  const auto w = build_projector(g, kernel);
  const std::size_t n = g.n_pixels_per_side;
  const bool want_vectors = a.modes > 0;
  if (a.lambda < 0.0) throw ArgumentError("--lambda must be >= 0");

  Spectrum s;
  try {
    if (a.op == "sirt-s") {
      s = sirt_spectrum(w, want_vectors);
    } else if (a.op == "normal") {
      s = normal_spectrum(w, a.lambda, want_vectors);
    } else if (a.op == "coarse") {
      s = coarse_spectrum(w, n, parse_band(a.band), a.lambda, want_vectors);
    } else if (a.op == "tg" || a.op == "wtg") {
      if (want_vectors) throw ArgumentError("--modes is only available for sirt-s, normal and coarse");
      PreconditionedSpectrumOptions opts;
      if (a.tg_smoother == "sirt") {
        opts.smoother = TgSmoother::sirt;
      } else if (a.tg_smoother == "normal-diagonal") {
        opts.smoother = TgSmoother::normal_diagonal;
      } else {
        throw ArgumentError("unknown --tg-smoother '" + a.tg_smoother + "'");
      }
      if (a.wtg_mode == "hybrid") {
        opts.mode = WtgMode::hybrid;
      } else if (a.wtg_mode == "multiplicative") {
        opts.mode = WtgMode::multiplicative;
      } else {
        throw ArgumentError("unknown --wtg-mode '" + a.wtg_mode + "'");
      }
      s = preconditioned_spectrum(w, n, a.lambda, a.op == "tg" ? PreconditionerKind::tg : PreconditionerKind::wtg,
                                  opts);
    } else {
      throw ArgumentError("unknown --operator '" + a.op + "'");
    }
  } catch (const SingularOperator& e) {
    throw NumericalFailure(e.what());
  }

  std::string csv = "index,real,imag,abs\n";
  for (std::size_t k = 0; k < s.size(); ++k) {
    csv += std::to_string(k) + "," + format_double(s.eigenvalues[k].real()) + "," +
           format_double(s.eigenvalues[k].imag()) + "," + format_double(std::abs(s.eigenvalues[k])) + "\n";
  }
  write_text(a.out, csv);

  const std::size_t side = s.eigenvectors ? static_cast<std::size_t>(std::lround(std::sqrt(double(s.size())))) : 0;
  const std::string prefix = a.mode_prefix.empty() ? a.out + ".mode" : a.mode_prefix;
  for (long k = 0; k < a.modes && static_cast<std::size_t>(k) < s.size(); ++k) {
    const auto img = as_image(side, eigenmode_image(s, static_cast<std::size_t>(k)));
    write_pgm(prefix + std::to_string(k + 1) + ".pgm", img);
    write_array(prefix + std::to_string(k + 1) + ".wmgt", img);
  }

  auto m = base_manifest("spectrum");
  m.set("n", static_cast<long long>(a.n));
  m.set("angles", static_cast<long long>(a.angles));
  m.set("detectors", static_cast<long long>(detectors));
  m.set("kernel", to_string(kernel));
  m.set("operator", a.op);
  m.set("source", to_string(s.source));
  if (!s.variant.empty()) m.set("variant", s.variant);
  m.set("lambda", a.lambda);
  m.set("dimension", s.size());
  m.set("condition_number", s.condition_number());
  m.set("spectral_radius", s.spectral_radius());
  m.set("max_imaginary", max_imaginary(s));
  write_manifest(manifest_path_for(a.out), m);
  std::printf("%s %s: kappa = %.6g, |lambda| in [%.6g, %.6g]\n", to_string(s.source), s.variant.c_str(),
              s.condition_number(), std::abs(s.eigenvalues.front()), s.spectral_radius());
  return 0;
}

// ---------------------------------------------------------------- bench

struct BenchArgs {
  int table = 1;
  std::string outdir;
  std::string manifest;
  std::string kernel = "line";
};

BenchmarkSpec spec_from_manifest(const Manifest& m, int& table) {
  BenchmarkSpec spec;
  try {
    table = std::stoi(m.require("table"));
    spec.n = std::stol(m.require("n"));
    spec.angles = std::stol(m.require("angles"));
    spec.kernel = parse_kernel(m.require("kernel"));
    spec.levels = std::stoul(m.require("levels"));
    const auto mode = m.require("wtg_mode");
    if (mode != "hybrid" && mode != "multiplicative") throw ArgumentError("manifest wtg_mode '" + mode + "'");
    spec.mode = mode == "hybrid" ? WtgMode::hybrid : WtgMode::multiplicative;
    spec.seed = std::stoull(m.require("noise_seed"));
    if (auto gen = m.get("noise_generator"); gen && *gen != kNoiseGenerator)
      throw ArgumentError("manifest names noise generator '" + *gen + "', this build provides '" +
                          std::string(kNoiseGenerator) + "'");
  } catch (const std::logic_error& e) {
    throw ArgumentError(std::string("malformed bench manifest: ") + e.what());
  }
  return spec;
}

std::string optional_index(const std::optional<std::size_t>& k) { return k ? std::to_string(*k) : std::string(); }

int cmd_bench(const BenchArgs& a) {
  BenchmarkSpec spec;
  int table = a.table;
  if (!a.manifest.empty()) {
    spec = spec_from_manifest(read_manifest(a.manifest), table);
  } else {
    spec.kernel = parse_kernel(a.kernel);
  }
  const auto ts = table_spec(table);
  fs::create_directories(a.outdir);
  const std::string stem = (fs::path(a.outdir) / ("table" + std::to_string(table))).string();

  auto m = base_manifest("bench");
  m.set("table", static_cast<long long>(table));
  m.set("n", static_cast<long long>(spec.n));
  m.set("angles", static_cast<long long>(spec.angles));
  m.set("detectors", static_cast<long long>(spec.n));
  m.set("kernel", to_string(spec.kernel));
  m.set("levels", spec.levels);
  m.set("wtg_mode", to_string(spec.mode));
  m.set("noise_alpha", ts.alpha);
  m.set("noise_seed", std::to_string(spec.seed));
  m.set("noise_generator", std::string(kNoiseGenerator));
  m.set("x0", "zero");
  m.set("error_criterion", kTableErrorCriterion);
  m.set("window_relative", kTableWindow);
  std::string rows;
  for (const auto& r : ts.rows) {
    if (!rows.empty()) rows += ';';
    rows += std::string(to_string(r.solver)) + ":" + std::to_string(r.iterations) + ":" + format_double(r.lambda);
  }
  m.set("rows", rows);
  write_manifest(stem + ".manifest", m);

  const auto problem = make_benchmark_problem(spec, ts.alpha);

  std::string csv =
      "solver,lambda,iterations,rel_l2,rel_linf,k_tol,k_opt,rel_l2_at_k_opt,reference_rel_l2,reference_rel_linf,"
      "window_lo,window_hi,pass\n";
  std::string timing = "solver,iterations,setup_seconds,solve_seconds,seconds_per_iteration\n";
  bool all_pass = true;
  for (const auto& row : ts.rows) {
    TableResult r;
    try {
      r = run_table_row(problem, spec, row);
    } catch (const SingularCoarseBlock& e) {
      throw NumericalFailure(e.what());
    }
    const auto& rec = r.outcome.result.record;
    const std::string name = to_string(row.solver);
    csv += name + "," + format_double(row.lambda) + "," + std::to_string(rec.last().iteration) + "," +
           format_double(r.rel_l2) + "," + format_double(r.rel_linf) + "," + optional_index(r.k_tol) + "," +
           std::to_string(r.k_opt) + "," + format_double(r.rel_l2_at_k_opt) + "," + format_double(row.reference_l2) +
           "," + format_double(row.reference_linf) + "," + format_double(r.window_lo()) + "," +
           format_double(r.window_hi()) + "," + (r.pass() ? "pass" : "fail") + "\n";
    const double solve = rec.last().seconds;
    const double per_iter = rec.last().iteration > 0 ? solve / static_cast<double>(rec.last().iteration) : 0.0;
    timing += name + "," + std::to_string(rec.last().iteration) + "," + format_double(r.outcome.setup_seconds) + "," +
              format_double(solve) + "," + format_double(per_iter) + "\n";
    write_convergence_csv(stem + "_" + name + ".csv", rec, false);
    write_array(stem + "_" + name + ".wmgt", as_image(problem.geometry.n_pixels_per_side, r.outcome.result.x));
    all_pass = all_pass && r.pass();
    std::printf("table %d %-13s k=%-5zu rel_l2=%.4f (reference %.4f, window [%.4f, %.4f]) rel_linf=%.4f k_tol=%s "
                "k_opt=%zu  %s  [setup %.2fs, solve %.2fs]\n",
                table, name.c_str(), rec.last().iteration, r.rel_l2, row.reference_l2, r.window_lo(), r.window_hi(),
                r.rel_linf, r.k_tol ? std::to_string(*r.k_tol).c_str() : "-", r.k_opt, r.pass() ? "PASS" : "FAIL",
                r.outcome.setup_seconds, solve);
    std::fflush(stdout);
  }
  write_text(stem + ".csv", csv);
  write_text(stem + "_timing.csv", timing);
  std::printf("table %d: %s\n", table, all_pass ? "all rows inside their windows" : "some rows outside their windows");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wavelet multigrid preconditioned tomographic reconstruction"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  PhantomArgs phantom;
  auto* p = app.add_subcommand("phantom", "Write the modified Shepp-Logan phantom");
  p->add_option("--n", phantom.n, "Pixels per side")->required()->check(CLI::PositiveNumber);
  p->add_option("--out", phantom.out, "Output image (WMGT)")->required();
  p->add_option("--pgm", phantom.pgm, "Also write an 8-bit PGM preview");

  ProjectArgs project;
  auto* pr = app.add_subcommand("project", "Forward-project an image into a sinogram");
  pr->add_option("--image", project.image, "Input image (WMGT)")->required();
  pr->add_option("--angles", project.angles, "Number of projection angles over [0, pi)")->required();
  pr->add_option("--detectors", project.detectors, "Detectors per angle (default: image side)");
  pr->add_option("--kernel", project.kernel, "Projector kernel")->check(CLI::IsMember({"joseph", "line"}));
  pr->add_option("--noise", project.noise, "Noise level alpha (fraction of max |b|)");
  pr->add_option("--seed", project.seed, "Noise seed");
  pr->add_option("--out", project.out, "Output sinogram (WMGT)")->required();
  pr->add_option("--pgm", project.pgm, "Also write an 8-bit PGM preview");

  ReconstructArgs rec;
  auto* r = app.add_subcommand("reconstruct", "Reconstruct an image from a sinogram");
  r->add_option("--sino", rec.sino, "Input sinogram (WMGT)")->required();
  r->add_option("--n", rec.n, "Pixels per side (default: --xexact side, else detector count)");
  r->add_option("--angles", rec.angles, "Angles (default: sinogram rows)");
  r->add_option("--detectors", rec.detectors, "Detectors (default: sinogram columns)");
  r->add_option("--kernel", rec.kernel, "Projector kernel")->check(CLI::IsMember({"joseph", "line"}));
  r->add_option("--solver", rec.solver, "Solver")
      ->required()
      ->check(CLI::IsMember({"sirt", "bicgstab", "tg-bicgstab", "wmg-bicgstab"}));
  r->add_option("--iters", rec.iters, "Iteration budget")->required();
  r->add_option("--tol", rec.tol, "Relative residual tolerance (0 disables)")->check(CLI::NonNegativeNumber);
  r->add_option("--lambda", rec.lambda, "Tikhonov parameter")->check(CLI::NonNegativeNumber);
  r->add_option("--levels", rec.levels, "WMG levels");
  r->add_flag("--multiplicative-wtg", rec.multiplicative, "Refresh the residual after every band");
  r->add_option("--xexact", rec.xexact, "Exact image for error columns");
  r->add_option("--out", rec.out, "Output image (WMGT)")->required();
  r->add_option("--log", rec.log, "Convergence CSV");
  r->add_flag("--no-seconds", rec.no_seconds, "Leave the seconds column blank");
  r->add_option("--pgm", rec.pgm, "Also write an 8-bit PGM preview");

  SpectrumArgs spec;
  auto* s = app.add_subcommand("spectrum", "Dense eigenvalue analysis of small operators");
  s->add_option("--n", spec.n, "Pixels per side")->check(CLI::PositiveNumber);
  s->add_option("--angles", spec.angles, "Angles")->check(CLI::PositiveNumber);
  s->add_option("--detectors", spec.detectors, "Detectors (default: n)");
  s->add_option("--kernel", spec.kernel, "Projector kernel")->check(CLI::IsMember({"joseph", "line"}));
  s->add_option("--operator", spec.op, "Operator")
      ->required()
      ->check(CLI::IsMember({"sirt-s", "normal", "coarse", "tg", "wtg"}));
  s->add_option("--lambda", spec.lambda, "Tikhonov parameter");
  s->add_option("--band", spec.band, "Band for --operator coarse")->check(CLI::IsMember({"LL", "LH", "HL", "HH"}));
  s->add_option("--wtg-mode", spec.wtg_mode, "WTG residual policy")->check(CLI::IsMember({"hybrid", "multiplicative"}));
  s->add_option("--tg-smoother", spec.tg_smoother, "TG smoother")->check(CLI::IsMember({"sirt", "normal-diagonal"}));
  s->add_option("--modes", spec.modes, "Export the first K eigenmodes as images")->check(CLI::NonNegativeNumber);
  s->add_option("--mode-prefix", spec.mode_prefix, "Path prefix for eigenmode images");
  s->add_option("--out", spec.out, "Eigenvalue CSV")->required();

  BenchArgs bench;
  auto* b = app.add_subcommand("bench", "Reproduce a results table on the 160 x 160 benchmark");
  auto* table_opt = b->add_option("--table", bench.table, "Table number")->check(CLI::IsMember({1, 2, 3}));
  b->add_option("--outdir", bench.outdir, "Output directory")->required();
  auto* manifest_opt = b->add_option("--manifest", bench.manifest, "Rerun from a bench manifest");
  b->add_option("--kernel", bench.kernel, "Projector kernel")->check(CLI::IsMember({"joseph", "line"}));
  table_opt->excludes(manifest_opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitArgument;
  }

  try {
    if (*p) return cmd_phantom(phantom);
    if (*pr) return cmd_project(project);
    if (*r) return cmd_reconstruct(rec);
    if (*s) return cmd_spectrum(spec);
    if (*b) {
      if (!*table_opt && bench.manifest.empty()) throw ArgumentError("bench needs --table or --manifest");
      return cmd_bench(bench);
    }
  } catch (const NumericalFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const SingularCoarseBlock& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const NotPositiveDefinite& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitArgument;
  }
  return kExitArgument;
}
