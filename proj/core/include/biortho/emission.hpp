#pragma once

#include <span>
#include <vector>

#include "biortho/photon.hpp"

namespace biortho {

// Two-level atom in the dipole approximation. The photon amplitudes live on
// a spherical quadrature whose radial window must contain omega0.
class EmissionModel {
 public:
  EmissionModel(double omega0, CVec3 dipole, double g0, SphericalQuadrature quad);

  // Gauss-Legendre window [omega0 - W, omega0 + W].
  static EmissionModel with_window(double omega0, CVec3 dipole, double g0, double W, int n_radial,
                                   int n_theta, int n_phi);
  // Radial node count giving 8 nodes per pi of resonance phase up to time t
  // and radius r (the wavefunction integrand oscillates with t + r).
  static int radial_nodes_for(double W, double t, double r = 0.0);

  double omega0() const { return omega0_; }
  const CVec3& dipole() const { return dipole_; }
  double g0() const { return g0_; }
  const SphericalQuadrature& quad() const { return layout_.quadrature(); }
  const MomentumLayout& layout() const { return layout_; }
  double half_width() const;

 private:
  double omega0_;
  CVec3 dipole_;
  double g0_;
  MomentumLayout layout_;
};

// (1 - exp(i d t)) / d, with a series for |d| t < 1e-6 (value -i t at d = 0).
Complex resonance_factor(double detuning, double t);
inline constexpr double kResonanceSeriesThreshold = 1e-6;

// M_lambda(k) (1 - exp(i (omega - omega0) t)) / (omega - omega0), M = g0 conj(e_lambda).d
Complex emission_amplitude(const EmissionModel& m, Helicity h, const Vec3& k, double t);

// Photon state with c+_lambda = i c_{g,lambda}(k, t) on the model quadrature.
// Throws QuadratureWindow if the radial rule is too coarse for t.
PhotonState emitted_state(const EmissionModel& m, double t);

// n(t) = sum_lambda int dk/((2 pi)^3 2) |c_g|^2.
double photon_number(const EmissionModel& m, double t);

struct NormRatio {
  double photon_number = 0.0;   // <psi~|psi>
  double covariant_norm = 0.0;  // <psi|psi>, weight 1/(2 omega)
  double ratio = 0.0;
};
NormRatio norm_ratio(const EmissionModel& m, double t);

struct ResolutionCheck {
  bool ok = true;
  int required_nodes = 0;
};
ResolutionCheck check_resolution(const EmissionModel& m, double t, double r_max);

// psi_lambda(x) = i int dk/((2 pi)^3 2) e_lambda(k) exp(-i (omega t - k.x)) c_{g,lambda}(k, t),
// with the angular integral done in closed form (spherical Bessel functions)
// and the radial one on the model's radial nodes.
std::vector<CVec3> emitted_wavefunction(const EmissionModel& m, Helicity h, double t,
                                        std::span<const Vec3> points);

// 2 sum_lambda |psi_lambda(x)|^2 / n(t).
std::vector<double> detection_probability(const EmissionModel& m, double t,
                                          std::span<const Vec3> points);

// r^2 times the angular integral of detection_probability.
std::vector<double> radial_density(const EmissionModel& m, double t, std::span<const double> radii);

// Radius of steepest descent of sqrt(density): the outer edge of the shell.
double wavefront_radius(std::span<const double> radii, std::span<const double> density);

}  // namespace biortho
