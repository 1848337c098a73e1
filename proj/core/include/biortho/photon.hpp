#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "biortho/kg.hpp"
#include "biortho/spectral.hpp"

namespace biortho {

// Spherical-polar frame at k. With theta, phi the polar angles of k:
//   k_hat   = (sin t cos p, sin t sin p, cos t)
//   e_theta = (cos t cos p, cos t sin p, -sin t)
//   e_phi   = (-sin p, cos p, 0)
//   e_lambda = (e_theta + i lambda e_phi) / sqrt(2)
// so that conj(e_lambda) = e_{-lambda} and e_theta x e_phi = k_hat.
struct HelicityTriad {
  Vec3 k_hat;
  Vec3 e_theta;
  Vec3 e_phi;
  CVec3 e_plus;
  CVec3 e_minus;

  const CVec3& e(Helicity h) const { return h == Helicity::plus ? e_plus : e_minus; }
};

inline constexpr double kPolarAxisTolerance = 1e-12;

// True for k = 0 and for k with sin(theta) < 1e-12.
bool on_polar_axis(const Vec3& k);
// Throws ZeroVector for k = 0 and PolarAxis on the polar axis.
HelicityTriad helicity_triad(const Vec3& k);

// Transverse photon state: four amplitude fields indexed by (eps, lambda).
class PhotonState {
 public:
  // Samples on polar-axis cells are forced to zero; masked_count() reports how
  // many were nonzero.
  explicit PhotonState(std::vector<SpectralField> fields);
  static PhotonState zeros(const MomentumLayout& layout, double time_label = 0.0);

  SpectralField& at(FrequencySign e, Helicity h) { return c_[slot(e, h)]; }
  const SpectralField& at(FrequencySign e, Helicity h) const { return c_[slot(e, h)]; }
  const Dispersion& disp() const { return disp_; }
  const MomentumLayout& layout() const { return c_[0].layout; }
  const GridSpec& grid() const { return c_[0].layout.grid(); }
  std::size_t masked_count() const { return masked_; }

  static std::size_t slot(FrequencySign e, Helicity h) { return 2 * index(e) + index(h); }

 private:
  std::vector<SpectralField> c_;
  Dispersion disp_{0.0};
  std::size_t masked_ = 0;
};

// Smooth azimuthal collar: 0 for rho <= rho0, 1 for rho >= rho1 (rho = |k_perp|),
// C-infinity in between.
double axis_mask(const Vec3& k, double rho0, double rho1);

PhotonState scale(const PhotonState& s, Complex a);

Complex photon_scalar_product(const PhotonState& s1, const PhotonState& s2);
double photon_squared_norm(const PhotonState& s);
double photon_dual_norm(const PhotonState& s);
// sum_{eps,lambda} sum_k measure |c|^2 (flat, no covariant weight).
double flat_norm(const PhotonState& s);

using VectorField = std::array<std::vector<Complex>, 3>;

// psi^eps_lambda(x) = i sum_k dk^3/((2 pi)^3 2) e_lambda(k) exp(-i eps (omega (t - tau) - k.x)) c.
VectorField photon_wavefunction(const PhotonState& s, FrequencySign eps, Helicity h, double t);
std::vector<CVec3> photon_wavefunction_at(const PhotonState& s, FrequencySign eps, Helicity h,
                                          double t, std::span<const Vec3> points);

struct PhotonDensity {
  std::array<std::vector<double>, 4> p;
  const std::vector<double>& at(FrequencySign e, Helicity h) const {
    return p[PhotonState::slot(e, h)];
  }
};

// p = 2 |psi|^2 / <psi~|psi>, |psi|^2 summed over Cartesian components.
PhotonDensity photon_probability_density(const PhotonState& s, double t);
// |c|^2 / sum measure |c|^2, per unit measure.
PhotonDensity momentum_probability(const PhotonState& s);

Eigen::Matrix3cd transverse_projector(const Vec3& k);
Eigen::Matrix3d closed_form_transverse_projector(const Vec3& k);
// max entry of |P(k) - (1 - k_hat k_hat)| over the nonsingular momenta.
double transverse_delta_check(std::span<const Vec3> ks);
double transverse_delta_check(const MomentumLayout& layout);

// Rotation taking (e_theta, e_phi, k_hat) onto the fixed axes (rows of the matrix).
Eigen::Matrix3d fixed_frame_rotation(const Vec3& k);

// Rotated-frame position operator, one state per Cartesian axis. Throws
// PolarAxis if the state has support within two cells of the polar axis.
std::array<PhotonState, 3> photon_position_apply(const PhotonState& s);
// max over a < b of |x_a x_b c - x_b x_a c| relative to max |x_a x_b c|.
double photon_position_commutator_residual(const PhotonState& s);
Vec3 photon_position_expectation(const PhotonState& s);

// Coefficients of the position eigenvector |A^eps_sigma(y)> at time t. With a
// component index j the eigenvector is contracted with conj(e_sigma)_j, so the
// wavefunctions summed over sigma give the transverse delta column j.
PhotonState photon_position_eigenstate(const MomentumLayout& layout, FrequencySign eps,
                                       Helicity sigma, std::optional<int> component,
                                       const Vec3& y, double t);
PhotonState photon_resolve_identity(const PhotonState& s, double t);
// Largest deviation of the vector-resolved Gram matrix from
// delta_eps delta_lambda (1/2) delta_perp_ij(x - y) on the grid.
double photon_biorthogonality_error(const MomentumLayout& layout, double t);

FourCurrentSamples photon_current(const PhotonState& s, double t);
double photon_continuity_residual(const PhotonState& s, double t);

// c -> |k|^{-1/2} c on every component.
PhotonState landau_peierls(const PhotonState& s);

// Two-photon amplitude tensor psi_{l1}(x1)_i psi_{l2}(x2)_j for the product
// state (eps = + parts). With symmetrize the exchange-symmetric combination is
// returned, scaled so its norm equals that of the product state.
Eigen::Matrix3cd two_photon_amplitude(const PhotonState& c1, const PhotonState& c2, bool symmetrize,
                                      const Vec3& x1, const Vec3& x2, Helicity l1, Helicity l2,
                                      double t);

}  // namespace biortho
