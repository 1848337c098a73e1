#include "biortho/random.hpp"

#include <cmath>

namespace biortho {

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u = 0.0;
  do u = uniform(); while (u == 0.0);
  const double v = uniform();
  const double r = std::sqrt(-2.0 * std::log(u));
  spare_ = r * std::sin(2.0 * kPi * v);
  has_spare_ = true;
  return r * std::cos(2.0 * kPi * v);
}

Vec3 Rng::unit_vector() {
  for (;;) {
    Vec3 v = normal3();
    const double n = v.norm();
    if (n > 1e-12) return v / n;
  }
}

std::uint64_t derive_seed(std::uint64_t seed, const char* label) {
  // FNV-1a over the label, mixed with the seed through splitmix64.
  std::uint64_t h = 1469598103934665603ull;
  for (const char* p = label; *p; ++p) {
    h ^= std::uint64_t(static_cast<unsigned char>(*p));
    h *= 1099511628211ull;
  }
  std::uint64_t z = seed ^ h;
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace biortho
