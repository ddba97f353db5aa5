#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <string_view>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "wmgtomo/sparse.hpp"

namespace wmgtomo {

/**
 * Parallel-beam acquisition over the half-turn.
 *
 * Pixel (row, col) has its center at x = col - (n-1)/2, y = (n-1)/2 - row, so
 * images are stored row-major with rows running down the y axis. Detector d of
 * every projection sits at signed offset t = d - (n_detectors-1)/2 and measures
 * the line {x cos(theta) + y sin(theta) = t}. Ray i = angle * n_detectors + d.
 */
struct Geometry {
  std::size_t n_pixels_per_side = 0;
  std::size_t n_detectors = 0;
  std::size_t n_angles = 0;
  std::vector<double> angles;
  double pixel_size = 1.0;
  double detector_spacing = 1.0;

  std::size_t n_rays() const { return n_angles * n_detectors; }               // M
  std::size_t n_pixels() const { return n_pixels_per_side * n_pixels_per_side; }  // N
};

/**
 * Ray/pixel weighting rule.
 *
 * joseph: linear interpolation between the two pixels straddling each slab
 * crossing, scaled by the slab length. line: exact intersection length of the
 * ray with every pixel it crosses (Siddon). Both give unit weights on
 * axis-aligned rays through pixel centers and row sums equal to the chord
 * length for rays fully inside the grid.
 */
enum class ProjectorKernel { joseph, line };

inline const char* to_string(ProjectorKernel k) { return k == ProjectorKernel::joseph ? "joseph" : "line"; }

inline ProjectorKernel parse_kernel(std::string_view name) {
  if (name == "joseph") return ProjectorKernel::joseph;
  if (name == "line") return ProjectorKernel::line;
  throw std::invalid_argument("unknown projector kernel '" + std::string(name) + "'");
}

inline Geometry build_geometry(long n, long n_detectors, long n_angles) {
  if (n < 1 || n_detectors < 1 || n_angles < 1) {
    throw std::invalid_argument("build_geometry: pixels, detectors and angles must all be >= 1");
  }
  Geometry g;
  g.n_pixels_per_side = static_cast<std::size_t>(n);
  g.n_detectors = static_cast<std::size_t>(n_detectors);
  g.n_angles = static_cast<std::size_t>(n_angles);
  g.angles.resize(g.n_angles);
  for (std::size_t k = 0; k < g.n_angles; ++k)
    g.angles[k] = static_cast<double>(k) * std::numbers::pi / static_cast<double>(n_angles);
  return g;
}

namespace detail {

// Positions within this distance of a pixel center snap onto it, so that
// axis-aligned rays do not pick up 1e-16 slivers from cos(pi/2) != 0.
inline constexpr double kSnap = 1e-12;

/// Adds linear-interpolation weights for continuous index u along a slab of n pixels.
template <typename Emit>
void interpolate(double u, std::size_t n, double scale, Emit&& emit) {
  double base = std::floor(u);
  double frac = u - base;
  if (frac < kSnap) {
    frac = 0.0;
  } else if (1.0 - frac < kSnap) {
    base += 1.0;
    frac = 0.0;
  }
  const long i0 = static_cast<long>(base);
  const long last = static_cast<long>(n) - 1;
  if (i0 >= 0 && i0 <= last && frac < 1.0) emit(static_cast<std::size_t>(i0), (1.0 - frac) * scale);
  if (frac > 0.0 && i0 + 1 >= 0 && i0 + 1 <= last) emit(static_cast<std::size_t>(i0 + 1), frac * scale);
}

}  // namespace detail

/**
 * Projection matrix W (M x N) with Joseph's kernel.
 *
 * Each ray is walked along its dominant axis. In every slab it crosses, the two
 * pixels straddling the crossing point receive linear-interpolation weights
 * scaled by the slab traversal length 1 / max(|cos|, |sin|). Rays that miss the
 * grid give empty rows.
 */
inline SparseOperator build_joseph_projector(const Geometry& g) {
  const std::size_t n = g.n_pixels_per_side;
  const double half = 0.5 * static_cast<double>(n - 1);
  const double det_half = 0.5 * static_cast<double>(g.n_detectors - 1);

  SparseBuilder builder(g.n_pixels());
  builder.reserve(g.n_rays() * 2 * n);
  for (double theta : g.angles) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const bool along_rows = std::abs(c) >= std::abs(s);
    const double scale = 1.0 / (along_rows ? std::abs(c) : std::abs(s));
    for (std::size_t d = 0; d < g.n_detectors; ++d) {
      const double t = (static_cast<double>(d) - det_half) * g.detector_spacing;
      if (along_rows) {
        // one slab per image row: solve x from the ray equation at that row's y
        for (std::size_t row = 0; row < n; ++row) {
          const double y = half - static_cast<double>(row);
          const double x = (t - y * s) / c;
          detail::interpolate(x + half, n, scale,
                              [&](std::size_t col, double w) { builder.add(row * n + col, w); });
        }
      } else {
        for (std::size_t col = 0; col < n; ++col) {
          const double x = static_cast<double>(col) - half;
          const double y = (t - x * c) / s;
          detail::interpolate(half - y, n, scale,
                              [&](std::size_t row, double w) { builder.add(row * n + col, w); });
        }
      }
      builder.end_row();
    }
  }
  return std::move(builder).finish();
}

/**
 * Projection matrix W (M x N) holding exact ray/pixel intersection lengths.
 *
 * The ray p(u) = t (cos, sin) + u (-sin, cos) is clipped to the grid square and
 * split at every grid line it crosses; each piece is charged to the pixel
 * containing its midpoint.
 */
inline SparseOperator build_line_projector(const Geometry& g) {
  const std::size_t n = g.n_pixels_per_side;
  const double half_width = 0.5 * static_cast<double>(n);
  const double det_half = 0.5 * static_cast<double>(g.n_detectors - 1);
  constexpr double kParallel = 1e-12;
  constexpr double kMinLength = 1e-12;

  SparseBuilder builder(g.n_pixels());
  builder.reserve(g.n_rays() * 2 * n);
  std::vector<double> cuts;
  cuts.reserve(2 * n + 4);
  for (double theta : g.angles) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    for (std::size_t d = 0; d < g.n_detectors; ++d) {
      const double t = (static_cast<double>(d) - det_half) * g.detector_spacing;
      const double x0 = t * c;  // x(u) = x0 - u s
      const double y0 = t * s;  // y(u) = y0 + u c
      double u_min = -std::numeric_limits<double>::infinity();
      double u_max = std::numeric_limits<double>::infinity();
      bool inside = true;
      if (std::abs(s) > kParallel) {
        const double a = (x0 + half_width) / s, b = (x0 - half_width) / s;
        u_min = std::max(u_min, std::min(a, b));
        u_max = std::min(u_max, std::max(a, b));
      } else {
        inside = std::abs(x0) < half_width;
      }
      if (std::abs(c) > kParallel) {
        const double a = (-half_width - y0) / c, b = (half_width - y0) / c;
        u_min = std::max(u_min, std::min(a, b));
        u_max = std::min(u_max, std::max(a, b));
      } else {
        inside = inside && std::abs(y0) < half_width;
      }
      if (inside && u_max - u_min > kMinLength) {
        cuts.clear();
        cuts.push_back(u_min);
        cuts.push_back(u_max);
        for (std::size_t k = 0; k <= n; ++k) {
          const double line = static_cast<double>(k) - half_width;
          if (std::abs(s) > kParallel) {
            const double u = (x0 - line) / s;
            if (u > u_min && u < u_max) cuts.push_back(u);
          }
          if (std::abs(c) > kParallel) {
            const double u = (line - y0) / c;
            if (u > u_min && u < u_max) cuts.push_back(u);
          }
        }
        std::sort(cuts.begin(), cuts.end());
        for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
          const double length = cuts[k + 1] - cuts[k];
          if (length < kMinLength) continue;
          const double um = 0.5 * (cuts[k] + cuts[k + 1]);
          const double col = std::floor(x0 - um * s + half_width);
          const double row = std::floor(half_width - (y0 + um * c));
          const auto ci = static_cast<std::size_t>(std::clamp(col, 0.0, static_cast<double>(n - 1)));
          const auto ri = static_cast<std::size_t>(std::clamp(row, 0.0, static_cast<double>(n - 1)));
          builder.add(ri * n + ci, length);
        }
      }
      builder.end_row();
    }
  }
  return std::move(builder).finish();
}

inline SparseOperator build_projector(const Geometry& g, ProjectorKernel kernel = ProjectorKernel::joseph) {
  return kernel == ProjectorKernel::joseph ? build_joseph_projector(g) : build_line_projector(g);
}

}  // namespace wmgtomo
