#pragma once

#include <cstdint>
#include <random>

#include "biortho/types.hpp"

namespace biortho {

// std::mt19937_64 with distributions written out explicitly, so a seed gives
// the same stream with any standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return double(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  // Standard normal via Box-Muller.
  double normal();
  Complex complex_normal() { return {normal(), normal()}; }
  Vec3 normal3() { return {normal(), normal(), normal()}; }
  // Uniform direction on the unit sphere.
  Vec3 unit_vector();

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// Derives an independent stream seed from a base seed and a label.
std::uint64_t derive_seed(std::uint64_t seed, const char* label);

}  // namespace biortho
