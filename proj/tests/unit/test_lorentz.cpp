#include <doctest.h>

#include <cmath>

#include "biortho/biortho.hpp"

using namespace biortho;

namespace {

const Eigen::Matrix4d kMetric = Eigen::Vector4d(1, -1, -1, -1).asDiagonal();

ProfileState gaussian_state(const Dispersion& d, const Vec3& k0, double sigma, const Vec3& x0, Complex amp,
                            bool minus_too) {
  ProfileState s{d, gaussian_profile(k0, sigma, x0, amp), std::nullopt, gaussian_support(k0, sigma), std::nullopt};
  if (minus_too) {
    s.minus = gaussian_profile(-k0, sigma, -x0, std::conj(amp));
    s.minus_support = gaussian_support(-k0, sigma);
  }
  return s;
}

// Spherical coordinates about the packet centre, fixed Gauss-Legendre rule.
Complex spherical_oracle(const Dispersion& d, const AmplitudeProfile& a, const AmplitudeProfile& b, const Vec3& c,
                         double radius) {
  const auto rn = gauss_legendre_nodes(80, 0.0, radius);
  const auto cn = gauss_legendre_nodes(40, -1.0, 1.0);
  const int n_phi = 80;
  Complex sum = 0.0;
  for (const auto& r : rn)
    for (const auto& ct : cn)
      for (int j = 0; j < n_phi; ++j) {
        const double ph = 2.0 * kPi * j / n_phi, st = std::sqrt(1.0 - ct.k * ct.k);
        const Vec3 k = c + r.k * Vec3(st * std::cos(ph), st * std::sin(ph), ct.k);
        const double w = r.weight * r.k * r.k * ct.weight * 2.0 * kPi / n_phi;
        sum += w / (kTwoPi3 * 2.0 * d.omega(k)) * std::conj(a(k)) * b(k);
      }
  return sum;
}

}  // namespace

TEST_CASE("boost matrix and composition") {
  Boost b(0.7, Vec3(1, 2, 2));
  CHECK(std::abs(b.axis().norm() - 1.0) < 1e-14);
  const Eigen::Matrix4d m = b.matrix();
  CHECK((m.transpose() * kMetric * m - kMetric).norm() < 1e-13);
  CHECK((compose(b, b.inverse()).matrix() - Eigen::Matrix4d::Identity()).norm() < 1e-14);
  CHECK((compose(b, Boost(0.3, b.axis())).matrix() - Boost(1.0, b.axis()).matrix()).norm() < 1e-13);
  CHECK(compose(Boost(0.2, Vec3(0, 0, 1)), Boost(0.5, Vec3(0, 0, -1))).rapidity() == doctest::Approx(-0.3));
  CHECK_THROWS_AS(compose(b, Boost(0.1, Vec3(1, 0, 0))), InvalidArgument);
  CHECK_THROWS_AS(Boost(0.1, Vec3::Zero()), InvalidArgument);
}

TEST_CASE("hyperplanes") {
  Boost b(0.6, Vec3(0, 1, 0));
  auto h = Hyperplane::from_boost(b, 2.0);
  const auto& n = h.normal();
  CHECK(n[0] > 0.0);
  CHECK(std::abs(n.dot(kMetric * n) - 1.0) < 1e-14);
  // events at ct' = 2 in the moving frame lie on the plane
  const Eigen::Matrix4d back = b.inverse().matrix();
  for (double y : {-3.0, 0.0, 5.0}) CHECK(std::abs(h.eval(back * Eigen::Vector4d(2.0, 1.0, y, -2.0))) < 1e-13);
  CHECK_THROWS_AS(Hyperplane(Eigen::Vector4d(0.5, 1.0, 0.0, 0.0), 0.0), InvalidArgument);
}

TEST_CASE("momentum boosts") {
  const Vec3 z(0, 0, 1);
  SUBCASE("identity and Doppler") {
    Dispersion light(0.0);
    const Vec3 k(0.0, 0.0, 2.0);
    auto same = boost_k(Boost(0.0, z), light, Vec3(0.3, 0.4, 0.5), FrequencySign::positive);
    CHECK((same.k - Vec3(0.3, 0.4, 0.5)).norm() == 0.0);
    auto r = boost_k(Boost(0.8, z), light, k, FrequencySign::positive);
    CHECK(r.omega == doctest::Approx(2.0 * std::exp(-0.8)).epsilon(1e-14));
  }
  SUBCASE("on-shell and consistent with the boost matrix") {
    Rng rng(3);
    for (double mass : {0.0, 0.1, 1.0, 10.0}) {
      Dispersion d(mass);
      double worst = 0.0, mat = 0.0;
      for (int n = 0; n < 10000; ++n) {
        const Boost b(rng.uniform(-1.5, 1.5), rng.unit_vector());
        const Vec3 k = 3.0 * rng.normal3();
        const auto e = rng.uniform() < 0.5 ? FrequencySign::positive : FrequencySign::negative;
        const auto r = boost_k(b, d, k, e);
        const double scale = std::max(1.0, r.omega * r.omega);
        worst = std::max(worst, std::abs(r.omega * r.omega - r.k.squaredNorm() - mass * mass) / scale);
        const Eigen::Vector4d p = b.matrix() * Eigen::Vector4d(sign(e) * d.omega(k), k[0], k[1], k[2]);
        mat = std::max(mat, std::abs(p[0] - sign(e) * r.omega) + (p.tail<3>() - r.k).norm());
        CHECK(r.omega > 0.0);
      }
      CHECK(worst < 1e-12);
      CHECK(mat < 1e-12 * 100);
    }
  }
}

TEST_CASE("boosting profiles") {
  Dispersion d(1.0);
  auto s = gaussian_state(d, Vec3(0.3, -0.2, 0.5), 0.6, Vec3(0.2, 0.1, -0.4), Complex(1.0, 0.5), true);
  const Vec3 axis = Vec3(1, 1, 0).normalized();
  Rng rng(4);
  std::vector<Vec3> ks;
  for (int n = 0; n < 50; ++n) ks.push_back(rng.normal3());

  auto id = boost_scalar_state(Boost(0.0, axis), s);
  auto two = boost_scalar_state(Boost(0.4, axis), boost_scalar_state(Boost(0.3, axis), s));
  auto one = boost_scalar_state(Boost(0.7, axis), s);
  auto back = boost_scalar_state(Boost(-0.7, axis), one);
  for (auto e : kFrequencySigns)
    for (const auto& k : ks) {
      const Complex v = (*s.profile(e))(k);
      CHECK(std::abs((*id.profile(e))(k) - v) < 1e-15);
      CHECK(std::abs((*two.profile(e))(k) - (*one.profile(e))(k)) < 1e-12);
      CHECK(std::abs((*back.profile(e))(k) - v) < 1e-12);
    }
  // the boosted support box covers the boosted packet centre
  const auto& box = *one.plus_support;
  const Vec3 c = boost_k(Boost(0.7, axis), d, Vec3(0.3, -0.2, 0.5), FrequencySign::positive).k;
  for (int a = 0; a < 3; ++a) {
    CHECK(box.lo[a] < c[a]);
    CHECK(box.hi[a] > c[a]);
  }
}

TEST_CASE("profile scalar product against a spherical oracle") {
  Dispersion d(1.0);
  const Vec3 k0(0.3, -0.2, 0.5);
  auto a = gaussian_state(d, k0, 0.6, Vec3(0.2, 0.1, -0.4), Complex(1.0, 0.5), false);
  auto b = gaussian_state(d, k0 + Vec3(0.1, 0.0, -0.1), 0.6, Vec3(-0.3, 0.2, 0.1), Complex(0.3, -0.8), false);
  const Complex ref = spherical_oracle(d, *a.plus, *b.plus, k0, 8.0 * 0.6);
  const ProductQuadrature q;
  const Complex got = profile_scalar_product(a, b, q.panels, q.order);
  CHECK(std::abs(got - ref) < 1e-10 * std::abs(ref));
}

TEST_CASE("scalar product is Lorentz invariant") {
  Dispersion d(1.0);
  auto a = gaussian_state(d, Vec3(0.3, -0.2, 0.5), 0.6, Vec3(0.2, 0.1, -0.4), Complex(1.0, 0.5), true);
  auto b = gaussian_state(d, Vec3(0.4, -0.2, 0.4), 0.5, Vec3(-0.3, 0.2, 0.1), Complex(0.3, -0.8), true);
  const Vec3 axis = Vec3(0.3, -1.0, 0.6).normalized();
  for (double eta : {0.2, 0.5, 1.0}) {
    auto r = invariance_check(Boost(eta, axis), a, b);
    CHECK(r.rel_err < 1e-6);
    CHECK(r.drift < 1e-8);
    CHECK(r.converged);
  }
  auto r0 = invariance_check(Boost(0.0, axis), a, b);
  CHECK(r0.rel_err < 1e-15);

  auto plus_only = gaussian_state(d, Vec3(0.3, -0.2, 0.5), 0.6, Vec3::Zero(), 1.0, false);
  ProfileState minus_only{d, std::nullopt, gaussian_profile(Vec3(0.3, -0.2, 0.5), 0.6, Vec3::Zero(), 1.0),
                          std::nullopt, gaussian_support(Vec3(0.3, -0.2, 0.5), 0.6)};
  auto rx = invariance_check(Boost(0.5, axis), plus_only, minus_only);
  CHECK(rx.original == Complex(0.0));
  CHECK(rx.boosted == Complex(0.0));
}
