#pragma once

#include <array>
#include <span>
#include <vector>

#include "biortho/spectral.hpp"

namespace biortho {

// One-particle Klein-Gordon state: positive and negative frequency amplitudes.
class KGState {
 public:
  KGState(SpectralField c_plus, SpectralField c_minus, Dispersion disp);
  static KGState zeros(const MomentumLayout& layout, Dispersion disp, double time_label = 0.0);

  const SpectralField& c_plus() const { return c_[0]; }
  const SpectralField& c_minus() const { return c_[1]; }
  const SpectralField& component(FrequencySign e) const { return c_[index(e)]; }
  SpectralField& component(FrequencySign e) { return c_[index(e)]; }
  const Dispersion& disp() const { return disp_; }
  const MomentumLayout& layout() const { return c_[0].layout; }
  const GridSpec& grid() const { return c_[0].layout.grid(); }

 private:
  std::array<SpectralField, 2> c_;
  Dispersion disp_;
};

struct FourCurrentSamples {
  std::vector<double> j0;
  std::array<std::vector<double>, 3> j_vec;
  double time_label = 0.0;
};

// phi_c = phi+ - phi-: the minus component changes sign.
KGState conjugate_amplitudes(const KGState& s);

// sum_eps sum_k w(k) conj(c1) c2 with the covariant weight.
Complex kg_scalar_product(const KGState& s1, const KGState& s2);
double squared_norm(const KGState& s);
// <psi~|psi> = sum_eps sum_k dk^3/((2 pi)^3 2) |c|^2; the density normalization.
double dual_norm(const KGState& s);

KGState evolve(const KGState& s, double t);
KGState scale(const KGState& s, Complex a);
KGState add(const KGState& a, const KGState& b);

// psi^eps(x) = sum_k dk^3/((2 pi)^3 2) exp(-i eps (omega (t - tau) - k.x)) c^eps(k).
std::vector<Complex> wavefunction(const KGState& s, FrequencySign eps, double t);

struct KGDensity {
  std::vector<double> p_plus;
  std::vector<double> p_minus;
};

// p^eps = 2 |psi^eps|^2 / <psi~|psi>.
KGDensity probability_density(const KGState& s, double t);

// Real parts of i (phi* d phi_c - d phi* phi_c), with phi_c = phi+ - phi-.
FourCurrentSamples current_biorthogonal(const KGState& s, double t);
// Real parts of i (phi* d phi - d phi* phi), unit charge.
FourCurrentSamples current_conventional(const KGState& s, double t);

// max |d_t J0 + div J| / (max |J0| omega_max), with both terms from exact
// spectral derivatives of the synthesized fields.
double continuity_residual_biorthogonal(const KGState& s, double t);
double continuity_residual_conventional(const KGState& s, double t);

struct PositionExpectation {
  Vec3 value = Vec3::Zero();
  Vec3 imag = Vec3::Zero();  // should vanish; reported for diagnostics
  double edge_fraction = 0.0;
};

// <psi~| x |psi> / <psi~|psi> with x = eps i grad_k on each component.
PositionExpectation position_expectation(const KGState& s);

// Newton-Wigner operator omega^{1/2} (eps i grad_k) omega^{-1/2}, one state per axis.
std::array<KGState, 3> nw_apply(const KGState& s);
// max |NW c - (eps i grad_k - eps i k / (2 omega^2)) c| over all samples and axes,
// relative to the largest sample of the expanded form.
double nw_identity_residual(const KGState& s);
// <psi| x_NW |psi> / <psi|psi> with the covariant product.
Vec3 nw_expectation(const KGState& s);

// Position eigenvector |pi^eps(y)> at time t on the grid (y must be a grid point).
KGState position_eigenstate(const MomentumLayout& layout, const Dispersion& disp,
                            FrequencySign eps, const Vec3& y, double t);
// c^eps(k) = 2 sum_x dx^3 exp(i eps (omega (t - tau) - k.x)) psi^eps(x): the state
// rebuilt from its wavefunction through the position-basis resolution of identity.
KGState resolve_identity(const KGState& s, double t);

enum class ProbeMode { positive_only, both };

struct CausalityReport {
  double t = 0.0;
  double outside_fraction = 0.0;
  double baseline = 0.0;
  double radius = 0.0;
};

// Gaussian in x of width sigma centered at the origin, split into
// frequency components: positive_only keeps only c+, both sets c+ and c- so
// the combined real field starts as the Gaussian with zero time derivative.
KGState localized_state(const MomentumLayout& layout, const Dispersion& disp, double sigma,
                        ProbeMode mode);

// Probability outside the sphere support_radius + t + 2 dx. positive_only uses
// the biorthogonal density of the c+ part; both uses |phi+ + phi-|^2 of the
// combined field, normalized to unit total.
CausalityReport causality_probe(const KGState& initial, double t, ProbeMode mode,
                                double support_radius);

}  // namespace biortho

namespace biortho {

// max over (eps, x, eps', y) of |2 dx^3 <pi^eps(x)|phi^eps'(y)> - delta|, built
// from position eigenstates on the grid.
double biorthogonality_error(const MomentumLayout& layout, const Dispersion& disp, double t);

}  // namespace biortho
