#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "wmgtomo/dense.hpp"
#include "wmgtomo/haar.hpp"
#include "wmgtomo/linear_operator.hpp"
#include "wmgtomo/sparse.hpp"

namespace wmgtomo {

/**
 * Residual update policy inside one wavelet two-grid step.
 *
 * hybrid: solve LL, refresh the residual once, then add the LH, HL and HH
 * corrections computed from that single refreshed residual.
 * multiplicative: refresh after every band, giving the product
 * (I - P_HH A_HH^-1 R_HH A)(I - P_HL ...)(I - P_LH ...)(I - P_LL ...).
 */
enum class WtgMode { hybrid, multiplicative };

inline const char* to_string(WtgMode m) { return m == WtgMode::hybrid ? "hybrid" : "multiplicative"; }

/// Raised when a coarsest-level Gram block cannot be Cholesky-factored.
class SingularCoarseBlock : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct WmgBuildOptions {
  std::size_t levels = 3;
  double lambda = 0.0;
  /// Keep every coarsest-level factor (normally only the LL children are kept,
  /// since the parent's residual refresh needs them). Useful for analysis.
  bool retain_all_factors = false;
};

/**
 * Wavelet multigrid hierarchy.
 *
 * Node k on level l (1-based) owns a factor P_k of shape M x side^2 whose Gram
 * matrix P_k^T P_k + lambda I is the Galerkin operator of that subproblem. The
 * root factor is W. Every non-coarsest node has four children P_k R_band^T, so
 * level l holds 4^(l-1) nodes. Coarsest nodes carry a Cholesky factorization of
 * their dense Gram matrix.
 */
class WmgHierarchy {
 public:
  struct Node {
    std::size_t level = 1;
    std::size_t side = 0;
    std::string path;  // band path from the root, e.g. "LL.HH"
    std::shared_ptr<const SparseOperator> factor;
    std::optional<DenseFactorization> coarse;
    std::array<std::size_t, 4> children{};

    bool is_coarsest() const { return coarse.has_value(); }
    std::size_t dim() const { return side * side; }
  };

  std::size_t levels() const { return levels_; }
  double lambda() const { return lambda_; }
  std::size_t n_rays() const { return n_rays_; }
  const Node& node(std::size_t k) const { return nodes_.at(k); }
  const Node& root() const { return nodes_.front(); }
  std::size_t size() const { return nodes_.size(); }

  std::size_t coarsest_count() const {
    std::size_t c = 0;
    for (const auto& nd : nodes_) c += nd.is_coarsest();
    return c;
  }

  /// Stored nonzeros over all factors on a level.
  std::size_t level_nnz(std::size_t level) const {
    std::size_t total = 0;
    for (const auto& nd : nodes_)
      if (nd.level == level && nd.factor) total += nd.factor->nnz();
    return total;
  }

 private:
  friend WmgHierarchy build_wmg_hierarchy(std::shared_ptr<const SparseOperator>, std::size_t, const WmgBuildOptions&);

  std::size_t levels_ = 0;
  double lambda_ = 0.0;
  std::size_t n_rays_ = 0;
  std::vector<Node> nodes_;
};

/// R_band^T as an explicit (side^2 x (side/2)^2) sparse matrix.
inline SparseOperator interpolation_matrix(Band band, std::size_t side) {
  return transpose(build_intergrid_set(side)[band]);
}

inline WmgHierarchy build_wmg_hierarchy(std::shared_ptr<const SparseOperator> w, std::size_t n,
                                        const WmgBuildOptions& opts) {
  if (opts.levels < 2) throw std::invalid_argument("build_wmg_hierarchy: at least two levels are required");
  if (!(opts.lambda >= 0.0)) throw std::invalid_argument("build_wmg_hierarchy: lambda must be >= 0");
  const std::size_t divisor = std::size_t{1} << (opts.levels - 1);
  if (n == 0 || n % divisor != 0) {
    throw std::invalid_argument("build_wmg_hierarchy: n = " + std::to_string(n) +
                                " is not divisible by 2^(levels-1) = " + std::to_string(divisor));
  }
  require_size(w->n_cols, n * n, "build_wmg_hierarchy(W columns)");

  WmgHierarchy h;
  h.levels_ = opts.levels;
  h.lambda_ = opts.lambda;
  h.n_rays_ = w->n_rows;

  WmgHierarchy::Node root;
  root.level = 1;
  root.side = n;
  root.path = "root";
  root.factor = std::move(w);
  h.nodes_.push_back(std::move(root));

  // Breadth-first: children of node k are appended in band order.
  for (std::size_t k = 0; k < h.nodes_.size(); ++k) {
    if (h.nodes_[k].level == opts.levels) continue;
    const std::size_t side = h.nodes_[k].side;
    std::array<SparseOperator, 4> interp;
    for (auto band : kBands) interp[static_cast<std::size_t>(band)] = interpolation_matrix(band, side);
    for (auto band : kBands) {
      WmgHierarchy::Node child;
      child.level = h.nodes_[k].level + 1;
      child.side = side / 2;
      child.path = (h.nodes_[k].level == 1 ? std::string() : h.nodes_[k].path + ".") + to_string(band);
      child.factor = std::make_shared<const SparseOperator>(
          spgemm(*h.nodes_[k].factor, interp[static_cast<std::size_t>(band)]));
      h.nodes_[k].children[static_cast<std::size_t>(band)] = h.nodes_.size();
      h.nodes_.push_back(std::move(child));
    }
  }

  for (std::size_t k = 0; k < h.nodes_.size(); ++k) {
    auto& nd = h.nodes_[k];
    if (nd.level != opts.levels) continue;
    try {
      nd.coarse = cholesky_factor(gram(*nd.factor, opts.lambda));
    } catch (const NotPositiveDefinite& e) {
      throw SingularCoarseBlock("coarse subproblem " + nd.path + " (level " + std::to_string(nd.level) +
                                ") is singular: " + e.what());
    }
    const bool ll_child = !nd.path.empty() && nd.path.ends_with("LL");
    if (!opts.retain_all_factors && !ll_child) nd.factor.reset();
  }
  return h;
}

inline WmgHierarchy build_wmg_hierarchy(const SparseOperator& w, std::size_t n, const WmgBuildOptions& opts) {
  return build_wmg_hierarchy(std::make_shared<const SparseOperator>(w), n, opts);
}

namespace detail {

/// out = P^T (P v) + lambda v, with P v supplied precomputed.
inline void gram_from_projection(const SparseOperator& p, std::span<const double> pv, double lambda,
                                 std::span<const double> v, std::span<double> out) {
  multiply_transpose(p, pv, out);
  if (lambda != 0.0)
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += lambda * v[j];
}

}  // namespace detail

/**
 * One wavelet two-grid correction at node k: returns e ~ A_k^{-1} r, where
 * A_k = P_k^T P_k + lambda I. Children are solved recursively (one V-cycle) or
 * by the cached Cholesky factors on the coarsest level.
 */
inline void wtg_apply(const WmgHierarchy& h, std::size_t k, std::span<const double> r, std::span<double> e,
                      WtgMode mode = WtgMode::hybrid) {
  const auto& nd = h.node(k);
  require_size(r.size(), nd.dim(), "wtg_apply(r)");
  require_size(e.size(), nd.dim(), "wtg_apply(e)");
  if (nd.is_coarsest()) {
    std::copy(r.begin(), r.end(), e.begin());
    nd.coarse->solve_in_place(e);
    return;
  }

  const std::size_t side = nd.side;
  const std::size_t child_dim = (side / 2) * (side / 2);
  const SparseOperator& p = *nd.factor;
  std::vector<double> rc(child_dim), ec(child_dim), projected(p.n_rows), refresh(nd.dim());
  std::fill(e.begin(), e.end(), 0.0);

  auto solve_child = [&](Band band, std::span<const double> residual) {
    restrict_band(band, side, residual, rc);
    wtg_apply(h, nd.children[static_cast<std::size_t>(band)], rc, ec, mode);
  };
  // A_k applied to the prolongation of ec from `band`, where `fine` = R_band^T ec.
  auto apply_a_to_correction = [&](Band band, std::span<const double> fine) {
    const auto& child = h.node(nd.children[static_cast<std::size_t>(band)]);
    if (child.factor) {
      multiply(*child.factor, ec, projected);  // P R^T ec == P_child ec
    } else {
      multiply(p, fine, projected);
    }
    detail::gram_from_projection(p, projected, h.lambda(), fine, refresh);
  };

  if (mode == WtgMode::hybrid) {
    solve_child(Band::LL, r);
    prolong_add_band(Band::LL, side, ec, e);
    apply_a_to_correction(Band::LL, e);
    std::vector<double> r_prime(nd.dim());
    for (std::size_t i = 0; i < r_prime.size(); ++i) r_prime[i] = r[i] - refresh[i];
    for (auto band : {Band::LH, Band::HL, Band::HH}) {
      solve_child(band, r_prime);
      prolong_add_band(band, side, ec, e);
    }
    return;
  }

  std::vector<double> r_cur(r.begin(), r.end()), fine(nd.dim());
  for (auto band : kBands) {
    solve_child(band, r_cur);
    std::fill(fine.begin(), fine.end(), 0.0);
    prolong_add_band(band, side, ec, fine);
    for (std::size_t i = 0; i < fine.size(); ++i) e[i] += fine[i];
    if (band == Band::HH) break;
    apply_a_to_correction(band, fine);
    for (std::size_t i = 0; i < r_cur.size(); ++i) r_cur[i] -= refresh[i];
  }
}

/// One WMG V-cycle as M^{-1} for right-preconditioned Krylov on W^T W + lambda I.
inline LinearOperator wmg_preconditioner(std::shared_ptr<const WmgHierarchy> h, WtgMode mode = WtgMode::hybrid) {
  const std::size_t dim = h->root().dim();
  return {dim, [h = std::move(h), mode](std::span<const double> in, std::span<double> out) {
            wtg_apply(*h, 0, in, out, mode);
          }};
}

}  // namespace wmgtomo
