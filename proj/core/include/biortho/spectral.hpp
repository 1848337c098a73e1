#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "biortho/grid.hpp"
#include "biortho/types.hpp"

namespace biortho {

// omega(k) = sqrt(|k|^2 + m^2). For m = 0 the k = 0 mode is singular.
class Dispersion {
 public:
  explicit Dispersion(double mass = 0.0);

  double mass() const { return mass_; }
  double omega(double k_abs) const;
  double omega(const Vec3& k) const { return omega(k.norm()); }
  bool singular(const Vec3& k) const { return mass_ == 0.0 && k.squaredNorm() == 0.0; }

  bool operator==(const Dispersion& o) const { return mass_ == o.mass_; }

 private:
  double mass_;
};

double omega(const Dispersion& disp, const Vec3& k);

// dk^3 / ((2 pi)^3 2 omega). Throws SingularMode at the massless k = 0 mode.
double covariant_weight(const Dispersion& disp, const GridSpec& grid, const Vec3& k);
double covariant_weight(const Dispersion& disp, const MomentumLayout& layout, std::size_t i);
// measure / ((2 pi)^3 2): the dual-basis weight.
double dual_weight(const MomentumLayout& layout, std::size_t i);

// Amplitude samples over a momentum layout. time_label is the reference
// time of the free phase: synthesis at t carries exp(-i eps omega (t - time_label)).
struct SpectralField {
  MomentumLayout layout;
  std::vector<Complex> samples;
  FrequencySign epsilon = FrequencySign::positive;
  std::optional<Helicity> helicity;
  double time_label = 0.0;

  SpectralField(MomentumLayout layout, FrequencySign eps,
                std::optional<Helicity> h = std::nullopt, double time_label = 0.0);
  SpectralField(MomentumLayout layout, std::vector<Complex> samples, FrequencySign eps,
                std::optional<Helicity> h = std::nullopt, double time_label = 0.0);

  std::size_t size() const { return samples.size(); }
};

// Zeroes samples on singular modes; returns how many were nonzero.
std::size_t enforce_zero_mode(SpectralField& f, const Dispersion& disp);

// Multiplies samples by (|k|^2 + m^2)^s.
SpectralField apply_power(const Dispersion& disp, double s, const SpectralField& f);

// Free evolution to reference time t (pure phase per mode).
SpectralField evolve(const SpectralField& f, const Dispersion& disp, double t);

// sum_k w(k) f(k) exp(-i eps (omega (t - time_label) - k.x)) on the position grid.
std::vector<Complex> synthesize(const SpectralField& f, const Dispersion& disp, double t);
// Same sum evaluated directly at arbitrary points; works for any layout.
std::vector<Complex> synthesize_at(const SpectralField& f, const Dispersion& disp, double t,
                                   std::span<const Vec3> points);
// Inverse of synthesize; the result carries time_label = t.
SpectralField analyze(std::span<const Complex> samples, FrequencySign eps,
                      const Dispersion& disp, const GridSpec& grid, double t);

// Plain lattice sums: sum_k a(k) exp(+i eps k.x) and sum_x b(x) exp(-i eps k.x).
std::vector<Complex> to_position(const GridSpec& grid, std::vector<Complex> a,
                                 FrequencySign eps);
std::vector<Complex> to_momentum(const GridSpec& grid, std::vector<Complex> b,
                                 FrequencySign eps);

// Fraction of |A(y)|^2 on the outermost layers of the conjugate grid, where
// A is the lattice transform of c. Spectral k-gradients need this small.
double conjugate_edge_fraction(const GridSpec& grid, std::span<const Complex> c);

inline constexpr double kEdgeTolerance = 1e-8;

// eps * i grad_k c for each axis, by multiplication with y on the conjugate
// grid. Throws BoundaryWrap when the edge fraction exceeds edge_tol.
std::array<std::vector<Complex>, 3> k_gradient(const GridSpec& grid, std::span<const Complex> c,
                                               FrequencySign eps,
                                               double edge_tol = kEdgeTolerance);

// Least-squares slope of log|phi| against log r for phi = synthesize_at along
// the ray r * direction, r log-spaced over [r_lo, r_hi].
double log_log_tail_slope(const SpectralField& f, const Dispersion& disp, double t,
                          const Vec3& direction, double r_lo, double r_hi, int samples);

// Copies a field into a larger grid with the same dk (zero padding in k).
SpectralField zero_pad(const SpectralField& f, const GridSpec& target);

}  // namespace biortho
