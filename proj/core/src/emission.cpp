#include "biortho/emission.hpp"

#include <algorithm>
#include <cmath>

#include "biortho/errors.hpp"

namespace biortho {

EmissionModel::EmissionModel(double omega0, CVec3 dipole, double g0, SphericalQuadrature quad)
    : omega0_(omega0), dipole_(dipole), g0_(g0), layout_(quad) {
  if (!(omega0 > 0.0)) throw InvalidArgument("emission: omega0 must be positive");
  if (!(dipole.norm() > 0.0)) throw InvalidArgument("emission: dipole must be nonzero");
  if (!(quad.k_min() < omega0 && omega0 < quad.k_max()))
    throw QuadratureWindow("emission: radial window does not contain omega0");
}

EmissionModel EmissionModel::with_window(double omega0, CVec3 dipole, double g0, double W,
                                         int n_radial, int n_theta, int n_phi) {
  if (!(W > 0.0) || !(W < omega0)) throw InvalidArgument("emission: need 0 < W < omega0");
  return EmissionModel(omega0, dipole, g0,
                       SphericalQuadrature::gauss_legendre(omega0 - W, omega0 + W, n_radial, n_theta, n_phi));
}

int EmissionModel::radial_nodes_for(double W, double t, double r) {
  return std::max(64, int(std::ceil(8.0 * W * (t + r) / kPi)));
}

double EmissionModel::half_width() const { return 0.5 * (quad().k_max() - quad().k_min()); }

Complex resonance_factor(double d, double t) {
  const double x = d * t;
  if (std::abs(x) < kResonanceSeriesThreshold)
    return t * Complex(x / 2.0 - x * x * x / 24.0, -1.0 + x * x / 6.0);
  const double s = std::sin(0.5 * x);
  return Complex(2.0 * s * s, -std::sin(x)) / d;
}

Complex emission_amplitude(const EmissionModel& m, Helicity h, const Vec3& k, double t) {
  if (t < 0.0) throw InvalidArgument("emission_amplitude: t must be nonnegative");
  const auto tr = helicity_triad(k);
  const Complex M = m.g0() * tr.e(h).dot(m.dipole());  // dot() conjugates the first argument
  return M * resonance_factor(k.norm() - m.omega0(), t);
}

ResolutionCheck check_resolution(const EmissionModel& m, double t, double r_max) {
  ResolutionCheck c;
  c.required_nodes = int(std::ceil(8.0 * m.half_width() * (t + r_max) / kPi));
  c.ok = m.quad().n_radial() >= c.required_nodes;
  return c;
}

namespace {

void require_resolution(const EmissionModel& m, double t) {
  auto c = check_resolution(m, t, 0.0);
  if (!c.ok)
    throw QuadratureWindow("emission: " + std::to_string(m.quad().n_radial()) +
                           " radial nodes, need " + std::to_string(c.required_nodes) + " at t = " +
                           std::to_string(t));
}

}  // namespace

PhotonState emitted_state(const EmissionModel& m, double t) {
  require_resolution(m, t);
  PhotonState s = PhotonState::zeros(m.layout(), 0.0);
  const Complex i(0.0, 1.0);
  for (auto h : kHelicities) {
    auto& c = s.at(FrequencySign::positive, h).samples;
    for (std::size_t n = 0; n < c.size(); ++n) c[n] = i * emission_amplitude(m, h, m.layout().k(n), t);
  }
  return s;
}

double photon_number(const EmissionModel& m, double t) {
  require_resolution(m, t);
  double sum = 0.0;
  for (auto h : kHelicities)
    for (std::size_t n = 0; n < m.layout().size(); ++n)
      sum += dual_weight(m.layout(), n) * std::norm(emission_amplitude(m, h, m.layout().k(n), t));
  return sum;
}

NormRatio norm_ratio(const EmissionModel& m, double t) {
  const PhotonState s = emitted_state(m, t);
  NormRatio r;
  r.photon_number = photon_dual_norm(s);
  r.covariant_norm = photon_squared_norm(s);
  if (!(r.covariant_norm > 0.0)) throw ZeroNorm("norm_ratio: zero state");
  r.ratio = r.photon_number / r.covariant_norm;
  return r;
}

namespace {

// j0 - j1/z, j1, j2 at z >= 0.
struct Bessel {
  double a, j1, j2;
};

Bessel bessel_terms(double z) {
  if (z < 1e-3) {
    const double z2 = z * z, z4 = z2 * z2;
    const double j0 = 1.0 - z2 / 6.0 + z4 / 120.0;
    const double j1z = 1.0 / 3.0 - z2 / 30.0 + z4 / 840.0;
    return {j0 - j1z, z * j1z, z2 / 15.0 - z4 / 210.0};
  }
  if (z < 0.5) {
    const double j1 = std::sph_bessel(1, z);
    return {std::sph_bessel(0, z) - j1 / z, j1, std::sph_bessel(2, z)};
  }
  const double s = std::sin(z), c = std::cos(z);
  const double j0 = s / z;
  const double j1 = (j0 - c) / z;
  const double j2 = (3.0 / (z * z) - 1.0) * j0 - 3.0 * c / (z * z);
  return {j0 - j1 / z, j1, j2};
}

// psi_lambda(r n) = Sa d + Sb n (n.d) - lambda Sg n x d.
struct RadialSums {
  Complex a, b, g;
};

RadialSums radial_sums(const EmissionModel& m, double t, double r) {
  const Complex i(0.0, 1.0);
  RadialSums s{0.0, 0.0, 0.0};
  for (const auto& node : m.quad().radial_nodes()) {
    const double k = node.k;
    const Complex pre = i * m.g0() * node.weight * k * k / (2.0 * kTwoPi3) * 2.0 * kPi *
                        std::polar(1.0, -k * t) * resonance_factor(k - m.omega0(), t);
    const Bessel b = bessel_terms(k * r);
    s.a += pre * b.a;
    s.b += pre * b.j2;
    s.g += pre * b.j1;
  }
  return s;
}

CVec3 assemble(const RadialSums& s, const CVec3& d, const Vec3& n, Helicity h) {
  const CVec3 nc = n.cast<Complex>();
  const Complex nd = (nc.transpose() * d)(0);
  // Eigen's cross() conjugates complex operands; spell it out.
  const CVec3 nxd(n[1] * d[2] - n[2] * d[1], n[2] * d[0] - n[0] * d[2], n[0] * d[1] - n[1] * d[0]);
  return s.a * d + s.b * nd * nc - double(sign(h)) * s.g * nxd;
}

}  // namespace

std::vector<CVec3> emitted_wavefunction(const EmissionModel& m, Helicity h, double t,
                                        std::span<const Vec3> points) {
  std::vector<CVec3> out(points.size());
  for (std::size_t p = 0; p < points.size(); ++p) {
    const double r = points[p].norm();
    const Vec3 n = r > 0.0 ? Vec3(points[p] / r) : Vec3(0.0, 0.0, 1.0);
    out[p] = assemble(radial_sums(m, t, r), m.dipole(), n, h);
  }
  return out;
}

std::vector<double> detection_probability(const EmissionModel& m, double t,
                                          std::span<const Vec3> points) {
  const double n = photon_number(m, t);
  if (!(n > 0.0)) throw ZeroNorm("detection_probability: n(t) = 0");
  std::vector<double> out(points.size(), 0.0);
  for (std::size_t p = 0; p < points.size(); ++p) {
    const double r = points[p].norm();
    const Vec3 dir = r > 0.0 ? Vec3(points[p] / r) : Vec3(0.0, 0.0, 1.0);
    const RadialSums s = radial_sums(m, t, r);
    double sum = 0.0;
    for (auto h : kHelicities) sum += assemble(s, m.dipole(), dir, h).squaredNorm();
    out[p] = 2.0 * sum / n;
  }
  return out;
}

std::vector<double> radial_density(const EmissionModel& m, double t, std::span<const double> radii) {
  const double n = photon_number(m, t);
  if (!(n > 0.0)) throw ZeroNorm("radial_density: n(t) = 0");
  // |psi|^2 is a degree-4 polynomial in the direction; this rule is exact for it.
  const auto ct = gauss_legendre_nodes(4, -1.0, 1.0);
  const int n_phi = 6;
  std::vector<std::pair<Vec3, double>> dirs;
  for (const auto& c : ct)
    for (int j = 0; j < n_phi; ++j) {
      const double ph = 2.0 * kPi * j / n_phi;
      const double s = std::sqrt(1.0 - c.k * c.k);
      dirs.emplace_back(Vec3(s * std::cos(ph), s * std::sin(ph), c.k), c.weight * 2.0 * kPi / n_phi);
    }
  std::vector<double> out(radii.size(), 0.0);
  for (std::size_t p = 0; p < radii.size(); ++p) {
    const RadialSums s = radial_sums(m, t, radii[p]);
    double sum = 0.0;
    for (const auto& [dir, w] : dirs)
      for (auto h : kHelicities) sum += w * assemble(s, m.dipole(), dir, h).squaredNorm();
    out[p] = 2.0 * radii[p] * radii[p] * sum / n;
  }
  return out;
}

double wavefront_radius(std::span<const double> radii, std::span<const double> density) {
  if (radii.size() != density.size() || radii.size() < 3)
    throw InvalidArgument("wavefront_radius: need matching arrays of at least 3 samples");
  double best = 0.0, best_r = radii[1];
  for (std::size_t i = 1; i + 1 < radii.size(); ++i) {
    const double slope = (std::sqrt(std::max(0.0, density[i + 1])) - std::sqrt(std::max(0.0, density[i - 1]))) /
                         (radii[i + 1] - radii[i - 1]);
    if (slope < best) {
      best = slope;
      best_r = radii[i];
    }
  }
  return best_r;
}

}  // namespace biortho
