#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "wmgtomo/sparse.hpp"

namespace wmgtomo {

enum class Domain { image, sinogram };

inline const char* to_string(Domain d) { return d == Domain::image ? "image" : "sinogram"; }

/// Flat vector tagged with the space it lives in (N pixels or M rays).
struct GridVector {
  Domain domain = Domain::image;
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
  std::span<const double> span() const { return values; }
  std::span<double> span() { return values; }
};

inline GridVector image_vector(std::vector<double> v) { return {Domain::image, std::move(v)}; }
inline GridVector sinogram_vector(std::vector<double> v) { return {Domain::sinogram, std::move(v)}; }

inline void require_domain(const GridVector& v, Domain want, const char* what) {
  if (v.domain != want) {
    throw DimensionError(std::string(what) + ": expected a " + to_string(want) + " vector, got " +
                         to_string(v.domain));
  }
}

/// W x for an image-domain x.
inline GridVector apply(const SparseOperator& w, const GridVector& x) {
  require_domain(x, Domain::image, "apply");
  return sinogram_vector(multiply(w, x.values));
}

/// W^T y for a sinogram-domain y (backprojection).
inline GridVector apply_transpose(const SparseOperator& w, const GridVector& y) {
  require_domain(y, Domain::sinogram, "apply_transpose");
  return image_vector(multiply_transpose(w, y.values));
}

}  // namespace wmgtomo
