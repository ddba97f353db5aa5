#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace wmgtomo {

/// Name of the generator behind seeded_uniform, recorded in run manifests.
inline constexpr std::string_view kNoiseGenerator = "mt19937_64/open-interval-52bit";

/**
 * Deterministic samples from U(-1, 1), endpoints excluded.
 *
 * The 52 high bits of each mt19937_64 draw are mapped to the midpoint of one of
 * 2^52 equal cells, so the output is identical on every platform (unlike
 * std::uniform_real_distribution, whose algorithm is unspecified).
 */
inline std::vector<double> seeded_uniform(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  std::vector<double> out(count);
  for (auto& v : out) {
    const auto bits = engine() >> 12;
    v = (static_cast<double>(bits) + 0.5) * 0x1p-51 - 1.0;
  }
  return out;
}

}  // namespace wmgtomo
