#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace mpsca {

/// mt19937_64 with hand-rolled mappings so draws are identical on every
/// standard library (std:: distributions are implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// [0, 1) with 53 random bits
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double log_uniform(double lo, double hi) {
    return std::exp(uniform(std::log(lo), std::log(hi)));
  }
  /// Exp(1)
  double exponential() { return -std::log1p(-uniform()); }
  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace mpsca
