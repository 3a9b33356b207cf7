#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace wsd {

using Rng = std::mt19937_64;

/// Unbiased draw from [0, n). The standard distributions are
/// implementation-defined, so seeded runs use these helpers to stay
/// reproducible across standard libraries.
inline std::size_t uniform_index(Rng& rng, std::size_t n) {
  const std::uint64_t bound = static_cast<std::uint64_t>(n);
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t v = rng();
  while (v >= limit) v = rng();
  return static_cast<std::size_t>(v % bound);
}

/// Uniform double in [0, 1) with 53 bits of mantissa.
inline double uniform_unit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

template <class Vec>
void shuffle_in_place(Vec& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::size_t j = uniform_index(rng, i);
    using std::swap;
    swap(v[i - 1], v[j]);
  }
}

}  // namespace wsd
