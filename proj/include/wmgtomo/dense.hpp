#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "wmgtomo/sparse.hpp"

namespace wmgtomo {

using DenseMatrix = Eigen::MatrixXd;  // column-major

/// Raised for a non-positive (or numerically vanishing) Cholesky pivot.
class NotPositiveDefinite : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Lower-triangular Cholesky factor L with G = L L^T.
class DenseFactorization {
 public:
  DenseFactorization() = default;
  explicit DenseFactorization(Eigen::LLT<DenseMatrix> llt) : llt_(std::move(llt)) {}

  std::size_t dim() const { return static_cast<std::size_t>(llt_.rows()); }
  DenseMatrix lower() const { return llt_.matrixL(); }

  /// Overwrites rhs with G^{-1} rhs.
  void solve_in_place(std::span<double> rhs) const {
    require_size(rhs.size(), dim(), "cholesky_solve");
    Eigen::Map<Eigen::VectorXd> v(rhs.data(), static_cast<Eigen::Index>(rhs.size()));
    llt_.solveInPlace(v);
  }

 private:
  Eigen::LLT<DenseMatrix> llt_;
};

/// Relative pivot floor: pivots below this fraction of the largest diagonal count as singular.
inline constexpr double kCholeskyPivotFloor = 1e-14;

inline DenseFactorization cholesky_factor(DenseMatrix g) {
  if (g.rows() != g.cols()) throw DimensionError("cholesky_factor: matrix is not square");
  const double scale = g.cwiseAbs().maxCoeff();
  if (g.size() > 0 && (g - g.transpose()).cwiseAbs().maxCoeff() > 1e-10 * std::max(scale, 1.0)) {
    throw std::invalid_argument("cholesky_factor: matrix is not symmetric");
  }
  const double max_diag = g.size() > 0 ? g.diagonal().maxCoeff() : 0.0;
  Eigen::LLT<DenseMatrix> llt;
  llt.compute(g);
  if (llt.info() != Eigen::Success) {
    throw NotPositiveDefinite("cholesky_factor: non-positive pivot");
  }
  const Eigen::VectorXd pivots = llt.matrixLLT().diagonal();
  for (Eigen::Index i = 0; i < pivots.size(); ++i) {
    if (!(pivots[i] * pivots[i] > kCholeskyPivotFloor * max_diag)) {
      throw NotPositiveDefinite("cholesky_factor: pivot " + std::to_string(i) +
                                " vanishes (matrix is singular to working precision)");
    }
  }
  return DenseFactorization(std::move(llt));
}

inline std::vector<double> cholesky_solve(const DenseFactorization& f, std::span<const double> rhs) {
  std::vector<double> z(rhs.begin(), rhs.end());
  f.solve_in_place(z);
  return z;
}

/// Dense P^T P + lambda I, accumulated from the rows of P.
inline DenseMatrix gram(const SparseOperator& p, double lambda = 0.0) {
  const auto q = static_cast<Eigen::Index>(p.n_cols);
  DenseMatrix g = DenseMatrix::Zero(q, q);
  double* data = g.data();
  for (std::size_t i = 0; i < p.n_rows; ++i) {
    auto cols = p.row_cols(i);
    auto vals = p.row_values(i);
    // lower triangle only: column cols[a], rows cols[b] >= cols[a]
    for (std::size_t a = 0; a < cols.size(); ++a) {
      double* column = data + static_cast<std::size_t>(cols[a]) * p.n_cols;
      const double va = vals[a];
      for (std::size_t b = a; b < cols.size(); ++b) column[cols[b]] += va * vals[b];
    }
  }
  g.diagonal().array() += lambda;
  g.triangularView<Eigen::StrictlyUpper>() = g.transpose();
  return g;
}

inline DenseMatrix to_dense(const SparseOperator& a) {
  DenseMatrix d = DenseMatrix::Zero(static_cast<Eigen::Index>(a.n_rows),
                                    static_cast<Eigen::Index>(a.n_cols));
  for (std::size_t i = 0; i < a.n_rows; ++i) {
    auto cols = a.row_cols(i);
    auto vals = a.row_values(i);
    for (std::size_t k = 0; k < cols.size(); ++k)
      d(static_cast<Eigen::Index>(i), cols[k]) = vals[k];
  }
  return d;
}

}  // namespace wmgtomo
