#pragma once

#include <cmath>
#include <cstdint>
#include <utility>

namespace qcompat {

// SplitMix64 used as a counter-based generator: output i of stream `seed` is
// a pure function of (seed, i), so any consumer can be replayed or sliced
// without shared state. Matches the reference sequence when indices run 0,1,...
inline uint64_t splitmix64(uint64_t seed, uint64_t index) {
  uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Uniform double in [0, 1) from the top 53 bits.
inline double uniform01(uint64_t seed, uint64_t index) {
  return static_cast<double>(splitmix64(seed, index) >> 11) * 0x1.0p-53;
}

// Child stream k of `seed`: generator output taken from a high-offset counter
// window, so child seeds never collide with the low-index draws ordinary
// consumption uses (the SplittableRandom split idiom).
inline uint64_t substream(uint64_t seed, uint64_t k) {
  return splitmix64(seed, 0x8000000000000000ull + k);
}

// Box-Muller pair; draw k consumes uniforms 2k and 2k+1 of the stream.
inline std::pair<double, double> normal_pair(uint64_t seed, uint64_t k) {
  double u1 = uniform01(seed, 2 * k);
  const double u2 = uniform01(seed, 2 * k + 1);
  if (u1 <= 0.0) u1 = 0x1.0p-53;  // keep the log finite
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * 3.141592653589793238462643383279502884 * u2;
  return {r * std::cos(a), r * std::sin(a)};
}

}  // namespace qcompat
