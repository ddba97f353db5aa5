#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>

#include "wmgtomo/sparse.hpp"

namespace wmgtomo {

/**
 * Haar sub-bands of a 2x2 coarsening step.
 *
 * The first letter is the filter along x (image columns), the second the
 * filter along y (image rows): LH is low-pass in x and high-pass in y. Since
 * images are row-major with the row index running along y, the restriction
 * for band (fx, fy) is the Kronecker product F_y (x) F_x.
 */
enum class Band : std::size_t { LL = 0, LH = 1, HL = 2, HH = 3 };

inline constexpr std::array<Band, 4> kBands{Band::LL, Band::LH, Band::HL, Band::HH};

inline const char* to_string(Band b) {
  constexpr const char* names[] = {"LL", "LH", "HL", "HH"};
  return names[static_cast<std::size_t>(b)];
}

inline void require_even(std::size_t n, const char* what) {
  if (n < 2 || n % 2 != 0) {
    throw std::invalid_argument(std::string(what) + ": size must be even and >= 2, got " +
                                std::to_string(n));
  }
}

/// (n/2) x n Haar scaling operator: row k = (e_{2k} + e_{2k+1}) / sqrt(2).
inline SparseOperator haar_scaling_1d(std::size_t n) {
  require_even(n, "haar_scaling_1d");
  SparseBuilder b(n);
  for (std::size_t k = 0; k < n / 2; ++k) {
    b.add(2 * k, std::numbers::sqrt2 / 2);
    b.add(2 * k + 1, std::numbers::sqrt2 / 2);
    b.end_row();
  }
  return std::move(b).finish();
}

/// (n/2) x n Haar wavelet operator: row k = (e_{2k} - e_{2k+1}) / sqrt(2).
inline SparseOperator haar_wavelet_1d(std::size_t n) {
  require_even(n, "haar_wavelet_1d");
  SparseBuilder b(n);
  for (std::size_t k = 0; k < n / 2; ++k) {
    b.add(2 * k, std::numbers::sqrt2 / 2);
    b.add(2 * k + 1, -std::numbers::sqrt2 / 2);
    b.end_row();
  }
  return std::move(b).finish();
}

/// The four restrictions n^2 -> (n/2)^2; interpolations are their transposes.
struct IntergridSet {
  std::size_t n = 0;
  std::array<SparseOperator, 4> restriction;

  const SparseOperator& operator[](Band b) const { return restriction[static_cast<std::size_t>(b)]; }
};

inline IntergridSet build_intergrid_set(std::size_t n) {
  require_even(n, "build_intergrid_set");
  const auto s = haar_scaling_1d(n);
  const auto j = haar_wavelet_1d(n);
  IntergridSet set;
  set.n = n;
  // kron(y-filter, x-filter)
  set.restriction[static_cast<std::size_t>(Band::LL)] = kron(s, s);
  set.restriction[static_cast<std::size_t>(Band::LH)] = kron(j, s);
  set.restriction[static_cast<std::size_t>(Band::HL)] = kron(s, j);
  set.restriction[static_cast<std::size_t>(Band::HH)] = kron(j, j);
  return set;
}

namespace detail {

// Signs of the 2x2 stencil (top-left, top-right, bottom-left, bottom-right) per band.
inline constexpr std::array<std::array<double, 4>, 4> kStencil{{
    {1.0, 1.0, 1.0, 1.0},    // LL
    {1.0, 1.0, -1.0, -1.0},  // LH: high along y
    {1.0, -1.0, 1.0, -1.0},  // HL: high along x
    {1.0, -1.0, -1.0, 1.0},  // HH
}};

}  // namespace detail

/// coarse = R_band fine, for a fine image of n x n pixels. Matches build_intergrid_set.
inline void restrict_band(Band band, std::size_t n, std::span<const double> fine, std::span<double> coarse) {
  require_even(n, "restrict_band");
  require_size(fine.size(), n * n, "restrict_band(fine)");
  const std::size_t m = n / 2;
  require_size(coarse.size(), m * m, "restrict_band(coarse)");
  const auto& w = detail::kStencil[static_cast<std::size_t>(band)];
  for (std::size_t i = 0; i < m; ++i) {
    const double* top = fine.data() + 2 * i * n;
    const double* bottom = top + n;
    for (std::size_t j = 0; j < m; ++j) {
      coarse[i * m + j] = 0.5 * (w[0] * top[2 * j] + w[1] * top[2 * j + 1] + w[2] * bottom[2 * j] +
                                 w[3] * bottom[2 * j + 1]);
    }
  }
}

/// fine += R_band^T coarse.
inline void prolong_add_band(Band band, std::size_t n, std::span<const double> coarse, std::span<double> fine) {
  require_even(n, "prolong_add_band");
  require_size(fine.size(), n * n, "prolong_add_band(fine)");
  const std::size_t m = n / 2;
  require_size(coarse.size(), m * m, "prolong_add_band(coarse)");
  const auto& w = detail::kStencil[static_cast<std::size_t>(band)];
  for (std::size_t i = 0; i < m; ++i) {
    double* top = fine.data() + 2 * i * n;
    double* bottom = top + n;
    for (std::size_t j = 0; j < m; ++j) {
      const double c = 0.5 * coarse[i * m + j];
      top[2 * j] += w[0] * c;
      top[2 * j + 1] += w[1] * c;
      bottom[2 * j] += w[2] * c;
      bottom[2 * j + 1] += w[3] * c;
    }
  }
}

}  // namespace wmgtomo
