#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

#include "wmgtomo/grid_vector.hpp"
#include "wmgtomo/random.hpp"

namespace wmgtomo {

struct Ellipse {
  double intensity;
  double semi_x;
  double semi_y;
  double center_x;
  double center_y;
  double rotation_deg;
};

// Modified (high-contrast) Shepp-Logan parameters on [-1, 1]^2.
inline constexpr std::array<Ellipse, 10> kModifiedSheppLogan{{
    {1.0, 0.69, 0.92, 0.0, 0.0, 0.0},
    {-0.8, 0.6624, 0.8740, 0.0, -0.0184, 0.0},
    {-0.2, 0.1100, 0.3100, 0.22, 0.0, -18.0},
    {-0.2, 0.1600, 0.4100, -0.22, 0.0, 18.0},
    {0.1, 0.2100, 0.2500, 0.0, 0.35, 0.0},
    {0.1, 0.0460, 0.0460, 0.0, 0.1, 0.0},
    {0.1, 0.0460, 0.0460, 0.0, -0.1, 0.0},
    {0.1, 0.0460, 0.0230, -0.08, -0.605, 0.0},
    {0.1, 0.0230, 0.0230, 0.0, -0.606, 0.0},
    {0.1, 0.0230, 0.0460, 0.06, -0.605, 0.0},
}};

inline double shepp_logan_value(double x, double y) {
  double value = 0.0, magnitude = 0.0;
  for (const auto& e : kModifiedSheppLogan) {
    const double phi = e.rotation_deg * std::numbers::pi / 180.0;
    const double dx = x - e.center_x;
    const double dy = y - e.center_y;
    const double u = dx * std::cos(phi) + dy * std::sin(phi);
    const double v = -dx * std::sin(phi) + dy * std::cos(phi);
    if ((u * u) / (e.semi_x * e.semi_x) + (v * v) / (e.semi_y * e.semi_y) <= 1.0) {
      value += e.intensity;
      magnitude += std::abs(e.intensity);
    }
  }
  // 1 - 0.8 - 0.2 leaves round-off instead of an exact zero.
  return std::abs(value) <= 8.0 * std::numeric_limits<double>::epsilon() * magnitude ? 0.0 : value;
}

/// n x n phantom sampled at pixel centers; the unit disk maps onto the inscribed circle.
inline GridVector shepp_logan(long n) {
  if (n < 1) throw std::invalid_argument("shepp_logan: n must be >= 1");
  const auto side = static_cast<std::size_t>(n);
  std::vector<double> img(side * side);
  for (std::size_t row = 0; row < side; ++row) {
    const double y = 1.0 - 2.0 * (static_cast<double>(row) + 0.5) / static_cast<double>(side);
    for (std::size_t col = 0; col < side; ++col) {
      const double x = 2.0 * (static_cast<double>(col) + 0.5) / static_cast<double>(side) - 1.0;
      img[row * side + col] = shepp_logan_value(x, y);
    }
  }
  return image_vector(std::move(img));
}

/**
 * b + eps with eps_i = alpha * u_i * max_j |b_j|, u ~ U(-1, 1) from seeded_uniform.
 */
inline GridVector add_noise(const GridVector& b, double alpha, std::uint64_t seed) {
  require_domain(b, Domain::sinogram, "add_noise");
  if (!(alpha >= 0.0)) throw std::invalid_argument("add_noise: alpha must be >= 0");
  GridVector out = b;
  if (alpha == 0.0) return out;
  double peak = 0.0;
  for (double v : b.values) peak = std::max(peak, std::abs(v));
  const auto u = seeded_uniform(b.size(), seed);
  for (std::size_t i = 0; i < out.size(); ++i) out.values[i] += alpha * u[i] * peak;
  return out;
}

struct ErrorMetrics {
  double rel_l2 = 0.0;
  double rel_linf = 0.0;
};

inline ErrorMetrics error_metrics(std::span<const double> x, std::span<const double> x_ex) {
  require_size(x.size(), x_ex.size(), "error_metrics");
  double diff2 = 0.0, ref2 = 0.0, diff_inf = 0.0, ref_inf = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - x_ex[i];
    diff2 += d * d;
    ref2 += x_ex[i] * x_ex[i];
    diff_inf = std::max(diff_inf, std::abs(d));
    ref_inf = std::max(ref_inf, std::abs(x_ex[i]));
  }
  if (ref_inf == 0.0) throw std::invalid_argument("error_metrics: reference image is identically zero");
  return {std::sqrt(diff2) / std::sqrt(ref2), diff_inf / ref_inf};
}

}  // namespace wmgtomo
