#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "wmgtomo/sparse.hpp"

namespace wmgtomo {

/// Square linear map on R^dim, applied out of place. Copies share the underlying callable.
class LinearOperator {
 public:
  using Kernel = std::function<void(std::span<const double>, std::span<double>)>;

  LinearOperator(std::size_t dim, Kernel kernel)
      : dim_(dim), kernel_(std::make_shared<Kernel>(std::move(kernel))) {}

  std::size_t dim() const { return dim_; }

  void apply(std::span<const double> in, std::span<double> out) const {
    require_size(in.size(), dim_, "LinearOperator::apply(in)");
    require_size(out.size(), dim_, "LinearOperator::apply(out)");
    (*kernel_)(in, out);
  }

  std::vector<double> operator()(std::span<const double> in) const {
    std::vector<double> out(dim_);
    apply(in, out);
    return out;
  }

 private:
  std::size_t dim_;
  std::shared_ptr<const Kernel> kernel_;
};

inline LinearOperator identity_operator(std::size_t dim) {
  return {dim, [](std::span<const double> in, std::span<double> out) {
            std::copy(in.begin(), in.end(), out.begin());
          }};
}

/**
 * v -> W^T (W v) + lambda v as two sparse products; W^T W is never formed.
 * The operator keeps W alive through the shared pointer.
 */
inline LinearOperator normal_operator(std::shared_ptr<const SparseOperator> w, double lambda) {
  const std::size_t n = w->n_cols;
  return {n, [w = std::move(w), lambda](std::span<const double> in, std::span<double> out) {
            std::vector<double> projected(w->n_rows);
            multiply(*w, in, projected);
            multiply_transpose(*w, projected, out);
            if (lambda != 0.0)
              for (std::size_t j = 0; j < out.size(); ++j) out[j] += lambda * in[j];
          }};
}

inline LinearOperator normal_operator(const SparseOperator& w, double lambda) {
  return normal_operator(std::make_shared<const SparseOperator>(w), lambda);
}

}  // namespace wmgtomo
