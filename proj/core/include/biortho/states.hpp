#pragma once

#include <span>
#include <vector>

#include "biortho/grid.hpp"
#include "biortho/random.hpp"
#include "biortho/types.hpp"

namespace biortho {

// Gaussian packet in k: a exp(-|k - k_center|^2 / (2 k_width^2)) exp(-i k.x_center).
struct Wavepacket {
  Vec3 k_center = Vec3::Zero();
  double k_width = 1.0;
  Vec3 x_center = Vec3::Zero();
  Complex amplitude = 1.0;
};

std::vector<Complex> wavepacket_samples(const MomentumLayout& layout,
                                        std::span<const Wavepacket> packets);

struct PacketOptions {
  int count = 3;
  double k_center_scale = 0.5;  // std dev of each k_center component
  double k_width_min = 0.4;
  double k_width_max = 0.7;
  double x_center_scale = 1.0;  // std dev of each x_center component
};

std::vector<Wavepacket> random_packets(Rng& rng, const PacketOptions& opt);

}  // namespace biortho
