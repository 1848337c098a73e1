#pragma once

#include <functional>
#include <optional>

#include <Eigen/Core>

#include "biortho/spectral.hpp"

namespace biortho {

// Pure boost of rapidity eta along a unit axis; beta = tanh(eta).
class Boost {
 public:
  Boost(double rapidity, const Vec3& axis);

  double rapidity() const { return eta_; }
  const Vec3& axis() const { return axis_; }
  double beta() const { return std::tanh(eta_); }
  double gamma() const { return std::cosh(eta_); }
  Boost inverse() const { return Boost(-eta_, axis_); }
  // Acts on contravariant (x0, x) with the mostly-minus metric.
  Eigen::Matrix4d matrix() const;

 private:
  double eta_;
  Vec3 axis_;
};

// Composition of boosts along one line (rapidities add). Throws otherwise.
Boost compose(const Boost& a, const Boost& b);

// Spacelike hyperplane n_mu x^mu = ct0 with future-timelike unit normal n.
class Hyperplane {
 public:
  Hyperplane(const Eigen::Vector4d& n, double ct0);
  // Simultaneity plane of the frame moving with boost b.
  static Hyperplane from_boost(const Boost& b, double ct0);

  const Eigen::Vector4d& normal() const { return n_; }
  double offset() const { return ct0_; }
  // n_mu x^mu - ct0 (zero on the plane).
  double eval(const Eigen::Vector4d& x) const;

 private:
  Eigen::Vector4d n_;
  double ct0_;
};

struct BoostedMomentum {
  Vec3 k;
  double omega;
};

// Boost of k^mu = (eps omega, k): omega' = gamma (omega - eps beta k_par),
// k'_par = gamma (k_par - eps beta omega), transverse part unchanged.
BoostedMomentum boost_k(const Boost& b, const Dispersion& disp, const Vec3& k, FrequencySign eps);

using AmplitudeProfile = std::function<Complex(const Vec3&)>;

struct SupportBox {
  Vec3 lo;
  Vec3 hi;
};

// Closed-form amplitudes of a scalar state. A sector without a profile is
// zero. The support box bounds where the profile is non-negligible.
struct ProfileState {
  Dispersion disp;
  std::optional<AmplitudeProfile> plus;
  std::optional<AmplitudeProfile> minus;
  std::optional<SupportBox> plus_support;
  std::optional<SupportBox> minus_support;

  const std::optional<AmplitudeProfile>& profile(FrequencySign e) const {
    return e == FrequencySign::positive ? plus : minus;
  }
  const std::optional<SupportBox>& support(FrequencySign e) const {
    return e == FrequencySign::positive ? plus_support : minus_support;
  }
};

// amp exp(-|k - k0|^2 / (2 sigma^2)) exp(-i k.x0)
AmplitudeProfile gaussian_profile(const Vec3& k0, double sigma, const Vec3& x0, Complex amp);
SupportBox gaussian_support(const Vec3& k0, double sigma, double n_sigma = 8.0);

// k -> pi(boost_k(b^-1, k)) per sector; support boxes are carried along.
ProfileState boost_scalar_state(const Boost& b, const ProfileState& s);

struct ProductQuadrature {
  int panels = 6;  // per axis
  int order = 16;  // Gauss-Legendre points per panel
  int max_order = 32;
  double drift_tolerance = 1e-8;
};

// sum_eps int d^3k / ((2 pi)^3 2 omega) conj(pi1) pi2 by composite tensor
// Gauss-Legendre over the intersection of the support boxes.
Complex profile_scalar_product(const ProfileState& s1, const ProfileState& s2, int panels, int order);

struct InvarianceReport {
  Complex original;
  Complex boosted;
  double rel_err = 0.0;
  double drift = 0.0;  // max relative change when the panel count is doubled
  bool converged = false;
};

InvarianceReport invariance_check(const Boost& b, const ProfileState& s1, const ProfileState& s2,
                                  const ProductQuadrature& quad = {});

}  // namespace biortho
