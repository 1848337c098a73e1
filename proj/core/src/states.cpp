#include "biortho/states.hpp"

#include <array>
#include <cmath>

namespace biortho {

namespace {

// Grid layouts factor per axis: Gaussian and plane-wave phase are products of
// one-dimensional tables.
std::vector<Complex> grid_samples(const GridSpec& g, std::span<const Wavepacket> packets) {
  const int n = g.n();
  std::vector<Complex> out(g.size(), Complex(0.0));
  std::array<std::vector<Complex>, 3> f;
  for (const auto& p : packets) {
    for (int a = 0; a < 3; ++a) {
      f[a].resize(std::size_t(n));
      for (int i = 0; i < n; ++i) {
        const double k = g.signed_index(i) * g.dk(), d = k - p.k_center[a];
        f[a][i] = std::exp(-d * d / (2.0 * p.k_width * p.k_width)) * std::polar(1.0, -k * p.x_center[a]);
      }
    }
    std::size_t idx = 0;
    for (int ix = 0; ix < n; ++ix) {
      const Complex ax = p.amplitude * f[0][ix];
      for (int iy = 0; iy < n; ++iy) {
        const Complex axy = ax * f[1][iy];
        for (int iz = 0; iz < n; ++iz) out[idx++] += axy * f[2][iz];
      }
    }
  }
  return out;
}

}  // namespace

std::vector<Complex> wavepacket_samples(const MomentumLayout& layout,
                                        std::span<const Wavepacket> packets) {
  if (layout.is_grid()) return grid_samples(layout.grid(), packets);
  std::vector<Complex> out(layout.size(), Complex(0.0));
  for (std::size_t i = 0; i < layout.size(); ++i) {
    const Vec3& k = layout.k(i);
    Complex sum = 0.0;
    for (const auto& p : packets) {
      const double g = std::exp(-(k - p.k_center).squaredNorm() / (2.0 * p.k_width * p.k_width));
      sum += p.amplitude * g * std::polar(1.0, -k.dot(p.x_center));
    }
    out[i] = sum;
  }
  return out;
}

std::vector<Wavepacket> random_packets(Rng& rng, const PacketOptions& opt) {
  std::vector<Wavepacket> out(static_cast<std::size_t>(opt.count));
  for (auto& p : out) {
    p.k_center = opt.k_center_scale * rng.normal3();
    p.k_width = rng.uniform(opt.k_width_min, opt.k_width_max);
    p.x_center = opt.x_center_scale * rng.normal3();
    p.amplitude = rng.complex_normal();
  }
  return out;
}

}  // namespace biortho
