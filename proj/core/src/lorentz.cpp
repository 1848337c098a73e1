#include "biortho/lorentz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "biortho/errors.hpp"

namespace biortho {

Boost::Boost(double rapidity, const Vec3& axis) : eta_(rapidity) {
  const double n = axis.norm();
  if (!(n > 0.0) || !std::isfinite(rapidity)) throw InvalidArgument("boost: need a finite rapidity and nonzero axis");
  axis_ = axis / n;
}

Eigen::Matrix4d Boost::matrix() const {
  const double g = gamma();
  const double gb = std::sinh(eta_);
  Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
  m(0, 0) = g;
  m.block<1, 3>(0, 1) = -gb * axis_.transpose();
  m.block<3, 1>(1, 0) = -gb * axis_;
  m.block<3, 3>(1, 1) += (g - 1.0) * axis_ * axis_.transpose();
  return m;
}

Boost compose(const Boost& a, const Boost& b) {
  const double c = a.axis().dot(b.axis());
  if (std::abs(std::abs(c) - 1.0) > 1e-12) throw InvalidArgument("compose: boosts are not collinear");
  return Boost(a.rapidity() + (c > 0.0 ? 1.0 : -1.0) * b.rapidity(), a.axis());
}

Hyperplane::Hyperplane(const Eigen::Vector4d& n, double ct0) : n_(n), ct0_(ct0) {
  const double nn = n[0] * n[0] - n.tail<3>().squaredNorm();
  if (!(n[0] > 0.0)) throw InvalidArgument("hyperplane: normal must be future pointing");
  if (std::abs(nn - 1.0) > 1e-14 * std::max(1.0, n[0] * n[0]))
    throw InvalidArgument("hyperplane: normal must satisfy n.n = 1");
}

Hyperplane Hyperplane::from_boost(const Boost& b, double ct0) {
  Eigen::Vector4d n;
  n[0] = b.gamma();
  n.tail<3>() = std::sinh(b.rapidity()) * b.axis();
  return Hyperplane(n, ct0);
}

double Hyperplane::eval(const Eigen::Vector4d& x) const {
  return n_[0] * x[0] - n_.tail<3>().dot(x.tail<3>()) - ct0_;
}

BoostedMomentum boost_k(const Boost& b, const Dispersion& disp, const Vec3& k, FrequencySign eps) {
  const double e = sign(eps);
  const double g = b.gamma();
  const double gb = std::sinh(b.rapidity());
  const double w = disp.omega(k);
  const double kp = k.dot(b.axis());
  const Vec3 kt = k - kp * b.axis();
  BoostedMomentum out;
  out.omega = g * w - e * gb * kp;
  out.k = kt + (g * kp - e * gb * w) * b.axis();
  return out;
}

AmplitudeProfile gaussian_profile(const Vec3& k0, double sigma, const Vec3& x0, Complex amp) {
  return [=](const Vec3& k) {
    return amp * std::exp(-(k - k0).squaredNorm() / (2.0 * sigma * sigma)) * std::polar(1.0, -k.dot(x0));
  };
}

SupportBox gaussian_support(const Vec3& k0, double sigma, double n_sigma) {
  const Vec3 d = Vec3::Constant(n_sigma * sigma);
  return {k0 - d, k0 + d};
}

namespace {

SupportBox boosted_box(const Boost& b, const Dispersion& disp, const SupportBox& box, FrequencySign e) {
  // Image of the box boundary, sampled densely on every face.
  const int m = 24;
  Vec3 lo = Vec3::Constant(std::numeric_limits<double>::infinity());
  Vec3 hi = -lo;
  for (int face = 0; face < 6; ++face) {
    const int fixed = face / 2;
    for (int i = 0; i <= m; ++i)
      for (int j = 0; j <= m; ++j) {
        Vec3 k;
        const int a = (fixed + 1) % 3, c = (fixed + 2) % 3;
        k[fixed] = face % 2 ? box.hi[fixed] : box.lo[fixed];
        k[a] = box.lo[a] + (box.hi[a] - box.lo[a]) * i / m;
        k[c] = box.lo[c] + (box.hi[c] - box.lo[c]) * j / m;
        const Vec3 kb = boost_k(b, disp, k, e).k;
        lo = lo.cwiseMin(kb);
        hi = hi.cwiseMax(kb);
      }
  }
  // Margin for extrema between face samples; the identity map needs none.
  const Vec3 pad = 0.05 * std::abs(b.beta()) * (hi - lo);
  return {lo - pad, hi + pad};
}

}  // namespace

ProfileState boost_scalar_state(const Boost& b, const ProfileState& s) {
  ProfileState out = s;
  const Boost inv = b.inverse();
  const Dispersion disp = s.disp;
  for (auto e : kFrequencySigns) {
    const auto& p = s.profile(e);
    if (!p) continue;
    AmplitudeProfile orig = *p;
    AmplitudeProfile boosted = [orig, inv, disp, e](const Vec3& k) { return orig(boost_k(inv, disp, k, e).k); };
    std::optional<SupportBox> box;
    if (s.support(e)) box = boosted_box(b, disp, *s.support(e), e);
    if (e == FrequencySign::positive) {
      out.plus = boosted;
      out.plus_support = box;
    } else {
      out.minus = boosted;
      out.minus_support = box;
    }
  }
  return out;
}

Complex profile_scalar_product(const ProfileState& s1, const ProfileState& s2, int panels, int order) {
  if (!(s1.disp == s2.disp)) throw GridMismatch("profile_scalar_product: different dispersions");
  if (panels < 1 || order < 1) throw InvalidArgument("profile_scalar_product: bad quadrature size");
  const auto unit = gauss_legendre_nodes(order, 0.0, 1.0);
  Complex total = 0.0;
  for (auto e : kFrequencySigns) {
    const auto& p1 = s1.profile(e);
    const auto& p2 = s2.profile(e);
    if (!p1 || !p2) continue;
    if (!s1.support(e) || !s2.support(e))
      throw InvalidArgument("profile_scalar_product: profiles need support boxes");
    const Vec3 lo = s1.support(e)->lo.cwiseMax(s2.support(e)->lo);
    const Vec3 hi = s1.support(e)->hi.cwiseMin(s2.support(e)->hi);
    if ((hi - lo).minCoeff() <= 0.0) continue;
    // Composite nodes per axis.
    std::array<std::vector<RadialNode>, 3> ax;
    for (int a = 0; a < 3; ++a) {
      const double h = (hi[a] - lo[a]) / panels;
      for (int p = 0; p < panels; ++p)
        for (const auto& u : unit) ax[a].push_back({lo[a] + h * (p + u.k), h * u.weight});
    }
    Complex sum = 0.0;
    for (const auto& x : ax[0])
      for (const auto& y : ax[1]) {
        Complex row = 0.0;
        for (const auto& z : ax[2]) {
          const Vec3 k(x.k, y.k, z.k);
          row += z.weight / (2.0 * s1.disp.omega(k)) * (std::conj((*p1)(k)) * (*p2)(k));
        }
        sum += x.weight * y.weight * row;
      }
    total += sum / kTwoPi3;
  }
  return total;
}

InvarianceReport invariance_check(const Boost& b, const ProfileState& s1, const ProfileState& s2,
                                  const ProductQuadrature& quad) {
  const ProfileState b1 = boost_scalar_state(b, s1);
  const ProfileState b2 = boost_scalar_state(b, s2);
  auto rel = [](Complex a, Complex ref) {
    const double d = std::abs(a - ref);
    if (d == 0.0) return 0.0;
    return std::abs(ref) > 0.0 ? d / std::abs(ref) : d;
  };
  // Raise the order until doubling the panel count moves the result by less
  // than the tolerance; report the last pair either way.
  auto converge = [&](const ProfileState& a, const ProfileState& c, double& drift) {
    Complex fine = 0.0;
    for (int order = quad.order;; order += 4) {
      const Complex coarse = profile_scalar_product(a, c, quad.panels, order);
      fine = profile_scalar_product(a, c, 2 * quad.panels, order);
      drift = rel(coarse, fine);
      if (drift < quad.drift_tolerance || order + 4 > quad.max_order) return fine;
    }
  };
  InvarianceReport r;
  double d_orig = 0.0, d_boost = 0.0;
  const Complex o2 = converge(s1, s2, d_orig);
  const Complex q2 = converge(b1, b2, d_boost);
  r.original = o2;
  r.boosted = q2;
  r.drift = std::max(d_orig, d_boost);
  r.converged = r.drift < quad.drift_tolerance;
  r.rel_err = rel(q2, o2);
  return r;
}

}  // namespace biortho
