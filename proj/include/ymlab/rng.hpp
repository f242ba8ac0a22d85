#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace ymlab {

// Deterministic, platform-independent stream generator. Probe i of a run with
// seed s always sees the same bits regardless of scheduling or thread count.
struct SplitMix64 {
  uint64_t state;

  explicit SplitMix64(uint64_t seed) : state(seed) {}

  uint64_t next() {
    state += 0x9E3779B97F4A7C15ull;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // uniform in [0,1)
  double uniform() { return std::ldexp(static_cast<double>(next() >> 11), -53); }

  // standard normal via Box-Muller (no library distribution: bit-stable)
  double normal() {
    double u1 = uniform();
    double u2 = uniform();
    while (u1 <= 1e-300) u1 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586477 * u2);
  }
};

inline uint64_t mix_seed(uint64_t seed, uint64_t index) {
  SplitMix64 g(seed ^ (0xD1B54A32D192ED03ull * (index + 1)));
  return g.next();
}

// Rademacher +-1 entries, 64 per draw.
inline void fill_rademacher(SplitMix64& g, std::vector<double>& out) {
  uint64_t bits = 0;
  int avail = 0;
  for (double& x : out) {
    if (avail == 0) {
      bits = g.next();
      avail = 64;
    }
    x = (bits & 1ull) ? 1.0 : -1.0;
    bits >>= 1;
    --avail;
  }
}

}  // namespace ymlab
