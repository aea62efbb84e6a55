#pragma once

// Deterministic random source for the oracle searches.
//
// A thin wrapper over std::mt19937_64 producing doubles via the 53-bit
// canonical construction, so sequences are reproducible bit-for-bit across
// platforms and standard-library versions (std::uniform_real_distribution is
// not portable across implementations).

#include <cstdint>
#include <random>

namespace cesembed {

class DeterministicRng {
 public:
  explicit DeterministicRng(std::uint64_t seed) : gen_(seed) {}

  // Uniform on [0, 1) with 53 random bits.
  double uniform01() { return double(gen_() >> 11) * 0x1.0p-53; }

  // Log-uniform on [lo, hi], 0 < lo < hi.
  double log_uniform(double lo, double hi) {
    return lo * std::pow(hi / lo, uniform01());
  }

  std::uint64_t raw() { return gen_(); }

 private:
  std::mt19937_64 gen_;
};

}  // namespace cesembed
