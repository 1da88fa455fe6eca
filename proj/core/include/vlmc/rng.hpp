#pragma once

#include <cstdint>

namespace vlmc {

// splitmix64: the fixed generator of the repository. Paths simulated from the
// same (model, n, seed, burn_in) are bit-identical across platforms.
inline uint64_t splitmix64_mix(uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return splitmix64_mix(state_);
  }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  uint64_t state_;
};

// Child-seed derivation for replicate (b) of grid point (a). Documented in
// the README; independent of scheduling and worker count.
inline uint64_t mix_seed(uint64_t master, uint64_t a, uint64_t b) {
  uint64_t x = splitmix64_mix(master ^ (0x9E3779B97F4A7C15ULL * (a + 1)));
  return splitmix64_mix(x ^ (0xBF58476D1CE4E5B9ULL * (b + 1)));
}

}  // namespace vlmc
