#include <doctest.h>

#include <cmath>
#include <sstream>

#include "biortho/biortho.hpp"

using namespace biortho;

namespace {

SpectralField random_field(const MomentumLayout& layout, Rng& rng, FrequencySign e) {
  SpectralField f(layout, e);
  for (auto& v : f.samples) v = rng.complex_normal();
  return f;
}

double max_rel(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  double d = 0.0, s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    d = std::max(d, std::abs(a[i] - b[i]));
    s = std::max(s, std::abs(b[i]));
  }
  return d / s;
}

}  // namespace

TEST_CASE("omega and covariant weights") {
  CHECK(omega(Dispersion(0.0), Vec3(3, 4, 0)) == doctest::Approx(5.0));
  CHECK(omega(Dispersion(2.0), Vec3(0, 0, 0)) == 2.0);
  CHECK(omega(Dispersion(1.0), Vec3(1, 1, 1)) == doctest::Approx(2.0));

  GridSpec g(8, 0.1);
  CHECK(covariant_weight(Dispersion(1.0), g, Vec3::Zero()) == doctest::Approx(0.001 / (kTwoPi3 * 2.0)));
  CHECK_THROWS_AS(covariant_weight(Dispersion(0.0), g, Vec3::Zero()), SingularMode);

  MomentumLayout layout(g);
  Dispersion d(0.3);
  for (std::size_t i = 0; i < layout.size(); ++i) {
    const Vec3 k = layout.k(i);
    CHECK(covariant_weight(d, g, k) == covariant_weight(d, g, Vec3(-k)));
  }
}

TEST_CASE("grid descriptor invariants") {
  CHECK_THROWS_AS(GridSpec(6, 0.0), InvalidArgument);
  CHECK_THROWS_AS(GridSpec(5, 0.1), InvalidArgument);
  CHECK_THROWS_AS(GridSpec(2, 0.1), InvalidArgument);
  GridSpec g(16, 0.37);
  CHECK(g.dx() * g.dk() * g.n() == doctest::Approx(2.0 * kPi).epsilon(1e-15));
  CHECK(g.k_at(g.flat_signed(-3, 2, 7)).isApprox(Vec3(-3 * 0.37, 2 * 0.37, 7 * 0.37)));
  CHECK(g.flat(0, 0, 1) == 1);
}

TEST_CASE("spherical quadrature self-test and polar nodes") {
  auto q = SphericalQuadrature::gauss_legendre(0.5, 1.5, 40, 7, 5);
  CHECK(q.exact_degree() == 79);
  CHECK(q.radial_self_test() < 1e-13);
  for (double c : q.cos_theta()) CHECK(std::abs(c) < 1.0);
  MomentumLayout layout(q);
  double area = 0.0;
  for (std::size_t i = 0; i < layout.size(); ++i) area += layout.measure(i);
  CHECK(area == doctest::Approx(4.0 * kPi / 3.0 * (1.5 * 1.5 * 1.5 - 0.125)).epsilon(1e-13));
}

TEST_CASE("apply_power") {
  GridSpec g(8, 0.5);
  MomentumLayout layout(g);
  Rng rng(1);
  auto f = random_field(layout, rng, FrequencySign::positive);
  Dispersion massive(0.7), massless(0.0);

  CHECK(apply_power(massive, 0.0, f).samples == f.samples);

  SpectralField fm = f;
  enforce_zero_mode(fm, massless);
  auto half = apply_power(massless, 0.5, fm);
  for (std::size_t i = 0; i < f.size(); ++i)
    CHECK(std::abs(half.samples[i] - layout.k(i).norm() * fm.samples[i]) <= 1e-14 * std::abs(fm.samples[i]) + 1e-300);

  auto back = apply_power(massive, 0.3, apply_power(massive, -0.3, f));
  CHECK(max_rel(back.samples, f.samples) < 1e-14);

  // group law per sample, to rounding of pow
  auto two = apply_power(massive, 0.25, apply_power(massive, 0.5, f));
  auto one = apply_power(massive, 0.75, f);
  for (std::size_t i = 0; i < f.size(); ++i)
    CHECK(std::abs(two.samples[i] - one.samples[i]) <= 4e-16 * std::abs(one.samples[i]));

  CHECK_THROWS_AS(apply_power(massless, -0.25, f), SingularMode);
  CHECK_NOTHROW(apply_power(massless, -0.25, fm));
}

TEST_CASE("synthesize a single mode gives a plane wave") {
  GridSpec g(8, 0.4);
  MomentumLayout layout(g);
  Dispersion d(1.3);
  for (auto e : kFrequencySigns) {
    SpectralField f(layout, e);
    const std::size_t i0 = g.flat_signed(1, -2, 3);
    const Vec3 k0 = layout.k(i0);
    const double w0 = d.omega(k0);
    f.samples[i0] = kTwoPi3 * 2.0 * w0 / g.dk3();
    const double t = 0.7;
    auto phi = synthesize(f, d, t);
    for (std::size_t x = 0; x < phi.size(); ++x) {
      const Complex expect = std::polar(1.0, -sign(e) * (w0 * t - k0.dot(g.x_at(x))));
      CHECK(std::abs(phi[x] - expect) < 1e-12);
    }
  }
}

TEST_CASE("synthesize matches a direct sum and obeys Parseval on 16^3") {
  GridSpec g(16, 0.3);
  MomentumLayout layout(g);
  Dispersion d(0.8);
  Rng rng(11);
  auto f = random_field(layout, rng, FrequencySign::negative);
  f.time_label = 0.2;
  const double t = 1.1;
  auto phi = synthesize(f, d, t);

  std::vector<Vec3> pts(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) pts[i] = g.x_at(i);
  // independent oracle: plain double loop
  std::vector<Complex> direct(g.size(), 0.0);
  for (std::size_t x = 0; x < g.size(); ++x) {
    Complex s = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k) {
      const Vec3 kv = g.k_at(k);
      const double w = std::sqrt(kv.squaredNorm() + 0.64);
      s += g.dk3() / (kTwoPi3 * 2.0 * w) * f.samples[k] * std::exp(Complex(0, 1) * (w * (t - 0.2) - kv.dot(pts[x])));
    }
    direct[x] = s;
  }
  CHECK(max_rel(phi, direct) < 1e-12);

  double lhs = 0.0, rhs = 0.0;
  for (auto v : phi) lhs += g.dx3() * std::norm(v);
  for (std::size_t k = 0; k < g.size(); ++k)
    rhs += g.dk3() / kTwoPi3 * std::norm(f.samples[k] / (2.0 * d.omega(layout.k(k))));
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));

  // linearity
  auto f2 = random_field(layout, rng, FrequencySign::negative);
  f2.time_label = 0.2;
  SpectralField comb = f;
  const Complex a(0.3, -1.2), b(2.0, 0.5);
  for (std::size_t i = 0; i < f.size(); ++i) comb.samples[i] = a * f.samples[i] + b * f2.samples[i];
  auto phi2 = synthesize(f2, d, t);
  auto phic = synthesize(comb, d, t);
  std::vector<Complex> lin(phi.size());
  for (std::size_t i = 0; i < lin.size(); ++i) lin[i] = a * phi[i] + b * phi2[i];
  CHECK(max_rel(phic, lin) < 1e-13);

  auto at = synthesize_at(f, d, t, std::span<const Vec3>(pts.data(), 5));
  for (int i = 0; i < 5; ++i) CHECK(std::abs(at[i] - direct[i]) < 1e-12 * std::abs(direct[i]) + 1e-15);
}

TEST_CASE("analyze inverts synthesize") {
  Rng rng(5);
  for (int n : {8, 32, 64}) {
    GridSpec g(n, 0.25);
    MomentumLayout layout(g);
    Dispersion d(0.5);
    auto f = random_field(layout, rng, n == 32 ? FrequencySign::negative : FrequencySign::positive);
    f.time_label = 0.4;
    auto back = analyze(synthesize(f, d, 0.4), f.epsilon, d, g, 0.4);
    CHECK(max_rel(back.samples, f.samples) < 1e-12);
    // at a different time the result is the evolved field
    auto later = analyze(synthesize(f, d, 2.0), f.epsilon, d, g, 2.0);
    CHECK(max_rel(later.samples, evolve(f, d, 2.0).samples) < 1e-12);
  }
  GridSpec g(8, 0.5);
  Dispersion d(1.0);
  auto c = analyze(std::vector<Complex>(g.size(), Complex(2.0, 1.0)), FrequencySign::positive, d, g, 0.0);
  CHECK(std::abs(c.samples[0]) > 0.0);
  for (std::size_t i = 1; i < c.size(); ++i) CHECK(std::abs(c.samples[i]) < 1e-12 * std::abs(c.samples[0]));
  auto z = analyze(std::vector<Complex>(g.size()), FrequencySign::positive, d, g, 0.0);
  for (auto v : z.samples) CHECK(v == Complex(0.0));
  CHECK_THROWS_AS(analyze(std::vector<Complex>(7), FrequencySign::positive, d, g, 0.0), InvalidArgument);

  // massless with a zero k = 0 sample
  Dispersion m0(0.0);
  MomentumLayout layout(g);
  auto f = random_field(layout, rng, FrequencySign::positive);
  enforce_zero_mode(f, m0);
  auto back = analyze(synthesize(f, m0, 0.0), f.epsilon, m0, g, 0.0);
  CHECK(max_rel(back.samples, f.samples) < 1e-12);
}

TEST_CASE("k gradient is i grad_k and guards the grid edge") {
  GridSpec g(48, 0.2);
  MomentumLayout layout(g);
  const Vec3 x0(0.5, -0.3, 0.8);
  Wavepacket p{Vec3(0.2, 0.0, -0.1), 0.5, x0, 1.0};
  auto c = wavepacket_samples(layout, std::span<const Wavepacket>(&p, 1));
  auto grad = k_gradient(g, c, FrequencySign::positive);
  for (std::size_t i = 0; i < c.size(); i += 331) {
    const Vec3 k = layout.k(i);
    // i d/dk of exp(-|k-kc|^2/2s^2 - i k.x0)
    for (int a = 0; a < 3; ++a) {
      const Complex exact = Complex(0, 1) * (-(k[a] - p.k_center[a]) / 0.25 - Complex(0, 1) * x0[a]) * c[i];
      CHECK(std::abs(grad[a][i] - exact) < 1e-9);
    }
  }
  Wavepacket far{Vec3::Zero(), 0.5, Vec3(g.length() * 0.49, 0, 0), 1.0};
  auto cf = wavepacket_samples(layout, std::span<const Wavepacket>(&far, 1));
  CHECK(conjugate_edge_fraction(g, cf) > 1e-8);
  CHECK_THROWS_AS(k_gradient(g, cf, FrequencySign::positive), BoundaryWrap);
}

TEST_CASE("Landau-Peierls power: a peaked field develops a power-law tail") {
  // Gaussian profile 2 omega (2 pi)^3 exp(-k^2/2) synthesizes to a Gaussian; after
  // |k|^{-1/2} the tail goes like r^{-5/2}.
  auto q = SphericalQuadrature::gauss_legendre(1e-6, 8.0, 400, 250, 4);
  MomentumLayout layout(q);
  Dispersion d(0.0);
  SpectralField f(layout, FrequencySign::positive);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double k = layout.k(i).norm();
    f.samples[i] = 2.0 * k * kTwoPi3 * std::exp(-0.5 * k * k);
  }
  const Vec3 z(0, 0, 1);
  const double peaked = log_log_tail_slope(f, d, 0.0, z, 2.0, 4.0, 8);
  CHECK(peaked < -4.0);  // Gaussian decay: steeper than any power over this range
  auto lp = apply_power(d, -0.25, f);
  const double slope = log_log_tail_slope(lp, d, 0.0, z, 5.0, 50.0, 24);
  MESSAGE("tail slope " << slope);
  CHECK(slope > -4.0);
  CHECK(slope < -2.0);
}

TEST_CASE("spectral field serialization round trip") {
  GridSpec g(8, 0.3);
  MomentumLayout layout(g);
  Rng rng(3);
  auto f = random_field(layout, rng, FrequencySign::negative);
  f.helicity = Helicity::minus;
  f.time_label = 0.125;
  auto back = spectral_field_from_json(spectral_field_to_json(f));
  CHECK(back.samples == f.samples);
  CHECK(back.epsilon == f.epsilon);
  CHECK(back.helicity == f.helicity);
  CHECK(back.time_label == f.time_label);
  CHECK(back.layout == f.layout);

  auto q = SphericalQuadrature::gauss_legendre(0.5, 1.5, 5, 3, 4);
  SpectralField fq(MomentumLayout(q), FrequencySign::positive);
  for (auto& v : fq.samples) v = rng.complex_normal();
  auto bq = spectral_field_from_json(spectral_field_to_json(fq));
  CHECK(bq.samples == fq.samples);
  CHECK(!bq.helicity);

  std::ostringstream os;
  write_spectral_slice_csv(os, f, 2);
  CHECK(os.str().rfind("k,re,im\n", 0) == 0);
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1e-300) == "1e-300");
  CHECK_THROWS_AS(spectral_field_from_json("{}"), InvalidArgument);
}

TEST_CASE("wavepacket samples on a grid match the direct formula") {
  MomentumLayout layout(GridSpec(12, 0.6));
  Rng rng(derive_seed(5, "packets"));
  auto packets = random_packets(rng, {});
  auto fast = wavepacket_samples(layout, packets);
  std::vector<Complex> ref(layout.size(), Complex(0.0));
  for (std::size_t i = 0; i < layout.size(); ++i)
    for (const auto& p : packets) {
      const Vec3& k = layout.k(i);
      ref[i] += p.amplitude * std::exp(-(k - p.k_center).squaredNorm() / (2.0 * p.k_width * p.k_width)) *
                std::polar(1.0, -k.dot(p.x_center));
    }
  CHECK(max_rel(fast, ref) < 1e-14);
}
