#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace motifconv {

// Sampling helpers built directly on the mt19937_64 bit stream. The standard
// <random> distributions are implementation-defined, so going through them
// would make "same seed, same output" depend on the standard library version.

inline double uniform_real(std::mt19937_64& rng) {
  // 53-bit mantissa in [0, 1)
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline std::size_t uniform_index(std::mt19937_64& rng, std::size_t n) {
  // Rejection sampling; unbiased for any n > 0.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x = rng();
  while (x >= limit) x = rng();
  return static_cast<std::size_t>(x % n);
}

inline bool bernoulli(std::mt19937_64& rng, double p) {
  return uniform_real(rng) < p;
}

inline double normal(std::mt19937_64& rng, double mean = 0.0, double stddev = 1.0) {
  // Box-Muller; consumes exactly two words per call.
  const double u1 = uniform_real(rng);
  const double u2 = uniform_real(rng);
  const double r = std::sqrt(-2.0 * std::log1p(-u1));
  const double theta = 6.283185307179586476925286766559 * u2;
  return mean + stddev * r * std::cos(theta);
}

template <typename T>
void shuffle_in_place(std::vector<T>& items, std::mt19937_64& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    std::size_t j = uniform_index(rng, i);
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace motifconv
