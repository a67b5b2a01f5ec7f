#pragma once

// Seeded sampling that is bit-identical across platforms: std::mt19937_64 output mapped to
// [0, 1) by taking the top 53 bits.

#include <cstdint>
#include <random>

#include "paraplex/jet.hpp"

namespace paraplex {

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}

  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
  Point point(double lo, double hi) { return {uniform(lo, hi), uniform(lo, hi), uniform(lo, hi), uniform(lo, hi)}; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace paraplex
