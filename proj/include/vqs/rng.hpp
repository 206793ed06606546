#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>

#include "vqs/types.hpp"

namespace vqs {

// Deterministic random source. mt19937_64 has a fully specified bit stream,
// and the uniform mapping below avoids std::uniform_real_distribution, whose
// output is implementation-defined. Same seed, same numbers, everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  // Uniform in [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  std::uint64_t raw() { return eng_(); }

  // Index sampled from unnormalized nonnegative weights.
  long discrete(const RVec& weights) {
    const double total = weights.sum();
    if (!(total > 0.0)) throw std::runtime_error("discrete: weights sum to zero");
    double u = uniform() * total;
    for (long i = 0; i < weights.size(); ++i) {
      u -= weights[i];
      if (u < 0.0) return i;
    }
    return weights.size() - 1;
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace vqs
