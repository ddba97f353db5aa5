#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace wmgtomo {

/// Thrown when operands of a linear-algebra kernel disagree in shape.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline void require_size(std::size_t got, std::size_t want, const char* what) {
  if (got != want) {
    throw DimensionError(std::string(what) + ": expected length " + std::to_string(want) +
                         ", got " + std::to_string(got));
  }
}

/**
 * Compressed sparse row matrix.
 *
 * Column indices within a row are strictly increasing. Used for the projector W,
 * the Haar intergrid operators and the per-level products W * R^T.
 */
struct SparseOperator {
  std::size_t n_rows = 0;
  std::size_t n_cols = 0;
  std::vector<std::size_t> row_ptr{0};
  std::vector<std::uint32_t> col_idx;
  std::vector<double> values;

  std::size_t nnz() const { return values.size(); }

  std::span<const std::uint32_t> row_cols(std::size_t i) const {
    return {col_idx.data() + row_ptr[i], row_ptr[i + 1] - row_ptr[i]};
  }
  std::span<const double> row_values(std::size_t i) const {
    return {values.data() + row_ptr[i], row_ptr[i + 1] - row_ptr[i]};
  }
};

/**
 * Row-by-row assembly of a SparseOperator. Entries pushed into the current row
 * may arrive in any order; duplicates are summed and exact zeros dropped when
 * the row is closed.
 */
class SparseBuilder {
 public:
  explicit SparseBuilder(std::size_t n_cols) { out_.n_cols = n_cols; }

  void reserve(std::size_t nnz) {
    out_.col_idx.reserve(nnz);
    out_.values.reserve(nnz);
  }

  void add(std::size_t col, double value) {
    if (col >= out_.n_cols) throw DimensionError("SparseBuilder: column index out of range");
    pending_.emplace_back(static_cast<std::uint32_t>(col), value);
  }

  void end_row() {
    std::sort(pending_.begin(), pending_.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t k = 0; k < pending_.size();) {
      auto col = pending_[k].first;
      double sum = 0.0;
      for (; k < pending_.size() && pending_[k].first == col; ++k) sum += pending_[k].second;
      if (sum != 0.0) {
        out_.col_idx.push_back(col);
        out_.values.push_back(sum);
      }
    }
    pending_.clear();
    out_.row_ptr.push_back(out_.values.size());
    ++out_.n_rows;
  }

  SparseOperator finish() && { return std::move(out_); }

 private:
  SparseOperator out_;
  std::vector<std::pair<std::uint32_t, double>> pending_;
};

/// y = A x
inline void multiply(const SparseOperator& a, std::span<const double> x, std::span<double> y) {
  require_size(x.size(), a.n_cols, "multiply(x)");
  require_size(y.size(), a.n_rows, "multiply(y)");
  const auto* cols = a.col_idx.data();
  const auto* vals = a.values.data();
  for (std::size_t i = 0; i < a.n_rows; ++i) {
    double acc = 0.0;
    for (std::size_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) acc += vals[k] * x[cols[k]];
    y[i] = acc;
  }
}

/// x = A^T y, computed by scattering rows; A^T is never formed.
inline void multiply_transpose(const SparseOperator& a, std::span<const double> y,
                               std::span<double> x) {
  require_size(y.size(), a.n_rows, "multiply_transpose(y)");
  require_size(x.size(), a.n_cols, "multiply_transpose(x)");
  std::fill(x.begin(), x.end(), 0.0);
  const auto* cols = a.col_idx.data();
  const auto* vals = a.values.data();
  for (std::size_t i = 0; i < a.n_rows; ++i) {
    const double yi = y[i];
    if (yi == 0.0) continue;
    for (std::size_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) x[cols[k]] += vals[k] * yi;
  }
}

inline std::vector<double> multiply(const SparseOperator& a, std::span<const double> x) {
  std::vector<double> y(a.n_rows);
  multiply(a, x, y);
  return y;
}

inline std::vector<double> multiply_transpose(const SparseOperator& a, std::span<const double> y) {
  std::vector<double> x(a.n_cols);
  multiply_transpose(a, y, x);
  return x;
}

inline std::vector<double> row_sums(const SparseOperator& a) {
  std::vector<double> s(a.n_rows, 0.0);
  for (std::size_t i = 0; i < a.n_rows; ++i)
    for (double v : a.row_values(i)) s[i] += v;
  return s;
}

inline std::vector<double> column_sums(const SparseOperator& a) {
  std::vector<double> s(a.n_cols, 0.0);
  for (std::size_t k = 0; k < a.nnz(); ++k) s[a.col_idx[k]] += a.values[k];
  return s;
}

inline bool is_nonnegative(const SparseOperator& a) {
  return std::all_of(a.values.begin(), a.values.end(), [](double v) { return v >= 0.0; });
}

inline SparseOperator sparse_identity(std::size_t n) {
  SparseOperator id;
  id.n_rows = id.n_cols = n;
  id.row_ptr.resize(n + 1);
  std::iota(id.row_ptr.begin(), id.row_ptr.end(), std::size_t{0});
  id.col_idx.resize(n);
  std::iota(id.col_idx.begin(), id.col_idx.end(), std::uint32_t{0});
  id.values.assign(n, 1.0);
  return id;
}

inline SparseOperator transpose(const SparseOperator& a) {
  SparseOperator t;
  t.n_rows = a.n_cols;
  t.n_cols = a.n_rows;
  t.row_ptr.assign(a.n_cols + 1, 0);
  for (auto c : a.col_idx) ++t.row_ptr[c + 1];
  std::partial_sum(t.row_ptr.begin(), t.row_ptr.end(), t.row_ptr.begin());
  t.col_idx.resize(a.nnz());
  t.values.resize(a.nnz());
  std::vector<std::size_t> next(t.row_ptr.begin(), t.row_ptr.end() - 1);
  for (std::size_t i = 0; i < a.n_rows; ++i) {
    for (std::size_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) {
      auto dst = next[a.col_idx[k]]++;
      t.col_idx[dst] = static_cast<std::uint32_t>(i);
      t.values[dst] = a.values[k];
    }
  }
  return t;
}

/// Products whose magnitude falls below this are treated as cancellation and not stored.
inline constexpr double kSpgemmDropTolerance = 1e-15;

/**
 * Sparse-sparse product C = A B (row-wise Gustavson with a dense accumulator).
 * Entries with |c_ij| < 1e-15 are dropped; the Haar factors cancel exactly
 * in many positions and those zeros must not become stored fill.
 */
inline SparseOperator spgemm(const SparseOperator& a, const SparseOperator& b) {
  if (a.n_cols != b.n_rows) {
    throw DimensionError("spgemm: inner dimensions " + std::to_string(a.n_cols) + " and " +
                         std::to_string(b.n_rows) + " differ");
  }
  SparseOperator c;
  c.n_rows = a.n_rows;
  c.n_cols = b.n_cols;
  c.row_ptr.reserve(a.n_rows + 1);

  std::vector<double> acc(b.n_cols, 0.0);
  std::vector<std::uint8_t> used(b.n_cols, 0);
  std::vector<std::uint32_t> touched;
  for (std::size_t i = 0; i < a.n_rows; ++i) {
    touched.clear();
    for (std::size_t ka = a.row_ptr[i]; ka < a.row_ptr[i + 1]; ++ka) {
      const double av = a.values[ka];
      const auto brow = a.col_idx[ka];
      for (std::size_t kb = b.row_ptr[brow]; kb < b.row_ptr[brow + 1]; ++kb) {
        const auto j = b.col_idx[kb];
        if (!used[j]) {
          used[j] = 1;
          touched.push_back(j);
        }
        acc[j] += av * b.values[kb];
      }
    }
    std::sort(touched.begin(), touched.end());
    for (auto j : touched) {
      if (std::abs(acc[j]) >= kSpgemmDropTolerance) {
        c.col_idx.push_back(j);
        c.values.push_back(acc[j]);
      }
      acc[j] = 0.0;
      used[j] = 0;
    }
    c.row_ptr.push_back(c.values.size());
  }
  return c;
}

/// Kronecker product A (x) B.
inline SparseOperator kron(const SparseOperator& a, const SparseOperator& b) {
  SparseBuilder builder(a.n_cols * b.n_cols);
  builder.reserve(a.nnz() * b.nnz());
  for (std::size_t ia = 0; ia < a.n_rows; ++ia) {
    for (std::size_t ib = 0; ib < b.n_rows; ++ib) {
      for (std::size_t ka = a.row_ptr[ia]; ka < a.row_ptr[ia + 1]; ++ka)
        for (std::size_t kb = b.row_ptr[ib]; kb < b.row_ptr[ib + 1]; ++kb)
          builder.add(a.col_idx[ka] * b.n_cols + b.col_idx[kb], a.values[ka] * b.values[kb]);
      builder.end_row();
    }
  }
  return std::move(builder).finish();
}

/// Builds a SparseOperator from a row-major dense buffer, skipping zeros.
inline SparseOperator from_dense(std::size_t rows, std::size_t cols, std::span<const double> dense) {
  require_size(dense.size(), rows * cols, "from_dense");
  SparseBuilder builder(cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j)
      if (dense[i * cols + j] != 0.0) builder.add(j, dense[i * cols + j]);
    builder.end_row();
  }
  return std::move(builder).finish();
}

}  // namespace wmgtomo
