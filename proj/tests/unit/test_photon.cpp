#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "biortho/biortho.hpp"

using namespace biortho;

namespace {

PhotonState random_photon(const MomentumLayout& layout, Rng& rng, PacketOptions opt = {}) {
  std::vector<SpectralField> f;
  for (auto e : kFrequencySigns)
    for (auto h : kHelicities) {
      auto packets = random_packets(rng, opt);
      f.emplace_back(layout, wavepacket_samples(layout, packets), e, h);
    }
  return PhotonState(std::move(f));
}

PhotonState single_mode(const MomentumLayout& layout, FrequencySign e, Helicity h, std::size_t i, Complex v) {
  PhotonState s = PhotonState::zeros(layout);
  s.at(e, h).samples[i] = v;
  return PhotonState({s.at(FrequencySign::positive, Helicity::plus), s.at(FrequencySign::positive, Helicity::minus),
                      s.at(FrequencySign::negative, Helicity::plus), s.at(FrequencySign::negative, Helicity::minus)});
}

PhotonState padded(const PhotonState& s, const GridSpec& big) {
  std::vector<SpectralField> f;
  for (auto e : kFrequencySigns)
    for (auto h : kHelicities) f.push_back(zero_pad(s.at(e, h), big));
  return PhotonState(std::move(f));
}

double residual_oracle(const PhotonState& s, double t) {
  const GridSpec& g = s.grid();
  GridSpec big(2 * g.n(), g.dk());
  PhotonState p = padded(s, big);
  MomentumLayout blay(big);
  const double w_max = std::sqrt(3.0) * g.n() / 2 * g.dk();
  const double h = 1e-3 / w_max;
  const double c[3] = {3.0 / 4.0, -3.0 / 20.0, 1.0 / 60.0};
  std::vector<double> dj0(big.size(), 0.0);
  for (int m = 1; m <= 3; ++m) {
    auto fwd = photon_current(p, t + m * h).j0;
    auto bwd = photon_current(p, t - m * h).j0;
    for (std::size_t i = 0; i < dj0.size(); ++i) dj0[i] += c[m - 1] * (fwd[i] - bwd[i]) / h;
  }
  auto now = photon_current(p, t);
  std::vector<Complex> acc(big.size(), 0.0);
  for (int a = 0; a < 3; ++a) {
    auto jk = to_momentum(big, std::vector<Complex>(now.j_vec[a].begin(), now.j_vec[a].end()),
                          FrequencySign::positive);
    for (std::size_t i = 0; i < jk.size(); ++i) acc[i] += Complex(0, blay.k(i)[a]) * jk[i];
  }
  auto div = to_position(big, std::move(acc), FrequencySign::positive);
  double worst = 0.0, j0max = 0.0;
  for (std::size_t i = 0; i < dj0.size(); ++i) {
    worst = std::max(worst, std::abs(dj0[i] + div[i].real() / double(big.size())));
    j0max = std::max(j0max, std::abs(now.j0[i]));
  }
  return worst / (j0max * w_max);
}

// Smooth transverse state supported away from the polar axis, phased to sit at x0.
PhotonState masked_state(const MomentumLayout& layout, const Vec3& kc, double sk, const Vec3& x0) {
  std::vector<SpectralField> f;
  for (auto e : kFrequencySigns)
    for (auto h : kHelicities) {
      SpectralField c(layout, e, h);
      if (e == FrequencySign::positive)
        for (std::size_t i = 0; i < c.size(); ++i) {
          const Vec3 k = layout.k(i);
          const double hw = h == Helicity::plus ? 1.0 : 0.5;
          c.samples[i] = hw * axis_mask(k, 0.4, 0.8) * std::exp(-(k - kc).squaredNorm() / (2 * sk * sk)) *
                         std::polar(1.0, -k.dot(x0));
        }
      f.push_back(std::move(c));
    }
  return PhotonState(std::move(f));
}

}  // namespace

TEST_CASE("helicity triad") {
  auto t = helicity_triad(Vec3(1, 0, 0));
  CHECK((t.e_theta - Vec3(0, 0, -1)).norm() < 1e-15);
  CHECK((t.e_phi - Vec3(0, 1, 0)).norm() < 1e-15);
  CHECK((t.e_plus - CVec3(0, Complex(0, 1), -1) / std::sqrt(2.0)).norm() < 1e-15);
  CHECK_THROWS_AS(helicity_triad(Vec3(0, 0, 1)), PolarAxis);
  CHECK_THROWS_AS(helicity_triad(Vec3(0, 0, -2)), PolarAxis);
  CHECK_THROWS_AS(helicity_triad(Vec3::Zero()), ZeroVector);

  Rng rng(5);
  double worst = 0.0;
  for (int n = 0; n < 100000; ++n) {
    const Vec3 k = rng.normal3() * rng.uniform(0.01, 10.0);
    auto f = helicity_triad(k);
    worst = std::max(worst, (f.e_theta.cross(f.e_phi) - f.k_hat).norm());
    worst = std::max(worst, (f.k_hat - k.normalized()).norm());
    worst = std::max(worst, std::abs(f.e_theta.dot(f.e_phi)));
    for (auto h : kHelicities) {
      worst = std::max(worst, std::abs(f.e(h).dot(k.cast<Complex>())) / k.norm());
      worst = std::max(worst, std::abs(f.e(h).squaredNorm() - 1.0));
    }
    worst = std::max(worst, std::abs(f.e_plus.dot(f.e_minus)));  // dot conjugates its first argument
    worst = std::max(worst, (f.e_plus.conjugate() - f.e_minus).norm());
  }
  CHECK(worst < 1e-13);
}

TEST_CASE("photon state masks the polar axis") {
  GridSpec g(8, 0.5);
  MomentumLayout layout(g);
  std::vector<SpectralField> f;
  for (auto e : kFrequencySigns)
    for (auto h : kHelicities) f.emplace_back(layout, std::vector<Complex>(g.size(), 1.0), e, h);
  PhotonState s(std::move(f));
  CHECK(s.masked_count() == 4 * g.n());
  CHECK(s.at(FrequencySign::positive, Helicity::plus).samples[0] == Complex(0.0));
  CHECK(s.at(FrequencySign::negative, Helicity::minus).samples[g.flat_signed(0, 0, 3)] == Complex(0.0));
  CHECK(s.disp().mass() == 0.0);
}

TEST_CASE("photon scalar product") {
  GridSpec g(8, 0.5);
  MomentumLayout layout(g);
  Rng rng(6);
  auto a = random_photon(layout, rng), b = random_photon(layout, rng);
  const Complex ab = photon_scalar_product(a, b), ba = photon_scalar_product(b, a);
  CHECK(ab.real() == ba.real());
  CHECK(ab.imag() == -ba.imag());
  CHECK(photon_squared_norm(a) > 0.0);

  const std::size_t i = g.flat_signed(1, 2, 0), j = g.flat_signed(-1, 0, 2);
  const auto pos = FrequencySign::positive, neg = FrequencySign::negative;
  const double w = layout.k(i).norm();
  const Complex amp = kTwoPi3 * 2.0 * w / g.dk3();
  auto p = single_mode(layout, pos, Helicity::plus, i, amp);
  CHECK(photon_scalar_product(p, single_mode(layout, pos, Helicity::minus, i, amp)) == Complex(0.0));
  CHECK(photon_scalar_product(p, single_mode(layout, neg, Helicity::plus, i, amp)) == Complex(0.0));
  CHECK(photon_scalar_product(p, single_mode(layout, pos, Helicity::plus, j, amp)) == Complex(0.0));
  CHECK(std::real(photon_scalar_product(p, p)) == doctest::Approx(kTwoPi3 * 2.0 * w / g.dk3()).epsilon(1e-14));

  CHECK_THROWS_AS(photon_scalar_product(a, PhotonState::zeros(MomentumLayout(GridSpec(8, 0.4)))), GridMismatch);
}

TEST_CASE("photon wavefunction") {
  GridSpec g(8, 0.5);
  MomentumLayout layout(g);
  const auto pos = FrequencySign::positive;
  SUBCASE("single mode is a transverse plane wave") {
    const std::size_t i = g.flat_signed(2, -1, 1);
    const Vec3 k = layout.k(i);
    auto s = single_mode(layout, pos, Helicity::minus, i, 2.0);
    auto psi = photon_wavefunction(s, pos, Helicity::minus, 0.6);
    const CVec3 e = helicity_triad(k).e_minus;
    for (std::size_t x = 0; x < g.size(); ++x) {
      const Complex ph = Complex(0, 1) * g.dk3() / (kTwoPi3 * 2.0) * 2.0 *
                         std::polar(1.0, -(k.norm() * 0.6 - k.dot(g.x_at(x))));
      for (int a = 0; a < 3; ++a) CHECK(std::abs(psi[a][x] - ph * e[a]) < 1e-15);
    }
  }
  SUBCASE("divergence vanishes spectrally") {
    Rng rng(9);
    auto s = random_photon(layout, rng);
    for (auto e : kFrequencySigns)
      for (auto h : kHelicities) {
        auto psi = photon_wavefunction(s, e, h, 0.3);
        std::vector<Complex> acc(g.size(), 0.0);
        double scale = 0.0;
        for (int a = 0; a < 3; ++a) {
          // differentiate in the field's own sign convention so Nyquist cells do not alias
          auto pk = to_momentum(g, psi[a], e);
          for (std::size_t i = 0; i < g.size(); ++i) {
            acc[i] += Complex(0, sign(e) * layout.k(i)[a]) * pk[i];
            scale = std::max(scale, std::abs(pk[i]) * layout.k(i).norm());
          }
        }
        double worst = 0.0;
        for (auto v : acc) worst = std::max(worst, std::abs(v));
        CHECK(worst < 1e-12 * scale);
      }
  }
  SUBCASE("point evaluation agrees with the grid") {
    Rng rng(10);
    auto s = random_photon(layout, rng);
    auto psi = photon_wavefunction(s, FrequencySign::negative, Helicity::plus, 1.1);
    std::vector<Vec3> pts = {g.x_at(0), g.x_at(77), g.x_at(300)};
    auto at = photon_wavefunction_at(s, FrequencySign::negative, Helicity::plus, 1.1, pts);
    for (std::size_t n = 0; n < pts.size(); ++n) {
      const std::size_t x = n == 0 ? 0 : (n == 1 ? 77 : 300);
      for (int a = 0; a < 3; ++a) CHECK(std::abs(at[n][a] - psi[a][x]) < 1e-13);
    }
  }
}

TEST_CASE("photon densities") {
  GridSpec g(16, 0.5);
  MomentumLayout layout(g);
  Rng rng(11);
  auto s = random_photon(layout, rng);
  auto p = photon_probability_density(s, 0.8);
  double total = 0.0, lo = 0.0;
  for (const auto& arr : p.p)
    for (double v : arr) {
      total += g.dx3() * v;
      lo = std::min(lo, v);
    }
  CHECK(lo >= -1e-12);
  CHECK(total == doctest::Approx(1.0).epsilon(1e-8));

  auto q = photon_probability_density(scale(s, std::polar(3.5, 0.7)), 0.8);
  for (int m = 0; m < 4; ++m)
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(q.p[m][i] == doctest::Approx(p.p[m][i]).epsilon(1e-12));

  auto mp = momentum_probability(s);
  double mtotal = 0.0;
  for (const auto& arr : mp.p)
    for (double v : arr) mtotal += g.dk3() * v;
  CHECK(mtotal == doctest::Approx(1.0).epsilon(1e-12));

  std::vector<SpectralField> f;
  for (auto e : kFrequencySigns)
    for (auto h : kHelicities) {
      SpectralField c = s.at(e, h);
      if (h == Helicity::minus) std::fill(c.samples.begin(), c.samples.end(), 0.0);
      f.push_back(c);
    }
  auto plus_only = photon_probability_density(PhotonState(std::move(f)), 0.0);
  for (auto e : kFrequencySigns)
    for (double v : plus_only.at(e, Helicity::minus)) CHECK(v == 0.0);

  const std::size_t i = g.flat_signed(1, 1, 1), j = g.flat_signed(-2, 0, 1);
  auto two = single_mode(layout, FrequencySign::positive, Helicity::plus, i, 1.0);
  two.at(FrequencySign::negative, Helicity::minus).samples[j] = Complex(0.0, 1.0);
  auto tp = momentum_probability(two);
  CHECK(g.dk3() * tp.at(FrequencySign::positive, Helicity::plus)[i] == doctest::Approx(0.5));
  CHECK(g.dk3() * tp.at(FrequencySign::negative, Helicity::minus)[j] == doctest::Approx(0.5));

  CHECK_THROWS_AS(photon_probability_density(PhotonState::zeros(layout), 0.0), ZeroNorm);
}

TEST_CASE("transverse projector") {
  Rng rng(13);
  std::vector<Vec3> ks;
  for (int n = 0; n < 10000; ++n) ks.push_back(rng.normal3() * rng.uniform(0.05, 5.0));
  CHECK(transverse_delta_check(ks) < 1e-12);
  for (int n = 0; n < 100; ++n) {
    auto p = transverse_projector(ks[n]);
    CHECK(std::abs(p.trace() - 2.0) < 1e-13);
    CHECK((p * ks[n].cast<Complex>()).norm() < 1e-13 * ks[n].norm());
    CHECK((p * p - p).norm() < 1e-13);
    CHECK((p - p.adjoint()).norm() < 1e-15);
  }
  CHECK(transverse_delta_check(MomentumLayout(GridSpec(8, 0.5))) < 1e-12);
}

TEST_CASE("photon biorthogonality and completeness on 8^3") {
  GridSpec g(8, 0.6);
  MomentumLayout layout(g);
  CHECK(photon_biorthogonality_error(layout, 0.0) < 1e-10);
  CHECK(photon_biorthogonality_error(layout, 1.3) < 1e-10);
  Rng rng(14);
  for (int trial = 0; trial < 3; ++trial) {
    std::vector<SpectralField> f;
    for (auto e : kFrequencySigns)
      for (auto h : kHelicities) {
        SpectralField c(layout, e, h);
        for (auto& v : c.samples) v = rng.complex_normal();
        f.push_back(std::move(c));
      }
    PhotonState s(std::move(f));
    auto r = photon_resolve_identity(s, 0.4);
    for (auto e : kFrequencySigns)
      for (auto h : kHelicities)
        for (std::size_t i = 0; i < g.size(); ++i)
          CHECK(std::abs(r.at(e, h).samples[i] - s.at(e, h).samples[i]) < 1e-10);
  }
  SUBCASE("eigenvector wavefunction is the transverse delta column") {
    const Vec3 y = g.x_at(g.flat_signed(1, 0, -2));
    for (int j = 0; j < 3; ++j) {
      VectorField sum;
      for (auto& c : sum) c.assign(g.size(), 0.0);
      for (auto h : kHelicities) {
        auto s = photon_position_eigenstate(layout, FrequencySign::positive, h, j, y, 0.0);
        auto psi = photon_wavefunction(s, FrequencySign::positive, h, 0.0);
        for (int a = 0; a < 3; ++a)
          for (std::size_t x = 0; x < g.size(); ++x) sum[a][x] += psi[a][x];
      }
      // oracle: (1/2) sum_k (delta_ij - k_i k_j/k^2) e^{ik(x-y)} / V over non-axis k
      for (std::size_t x = 0; x < g.size(); x += 7)
        for (int a = 0; a < 3; ++a) {
          Complex ref = 0.0;
          for (std::size_t i = 0; i < g.size(); ++i) {
            const Vec3 k = layout.k(i);
            if (on_polar_axis(k)) continue;
            ref += closed_form_transverse_projector(k)(a, j) * std::polar(1.0, k.dot(g.x_at(x) - y));
          }
          ref *= 0.5 / (g.size() * g.dx3());
          CHECK(std::abs(sum[a][x] - ref) < 1e-10 / g.dx3());
        }
    }
  }
}

TEST_CASE("photon position operator") {
  // Centred far enough from the axis that the collar only touches sub-1e-8 tails.
  GridSpec g(64, 0.18);
  MomentumLayout layout(g);
  const Vec3 kc(2.6, 2.0, 0.3), x0(0.6, -0.4, 0.9);
  auto s = masked_state(layout, kc, 0.35, x0);

  CHECK(photon_position_commutator_residual(s) < 1e-8);

  auto xs = photon_position_apply(s);
  double leak = 0.0;
  for (int a = 0; a < 3; ++a)
    for (auto h : kHelicities)
      for (const Complex& v : xs[a].at(FrequencySign::negative, h).samples) leak = std::max(leak, std::abs(v));
  CHECK(leak == 0.0);

  const Vec3 e0 = photon_position_expectation(s);
  const Vec3 shift(0.5, 0.3, -0.7);
  const Vec3 e1 = photon_position_expectation(masked_state(layout, kc, 0.35, x0 + shift));
  CHECK((e1 - e0 - shift).norm() < 1e-3 * g.dx());
  CHECK((e0 - x0).norm() < 1e-3 * g.dx());

  PhotonState raw = PhotonState::zeros(layout);
  for (auto h : kHelicities) {
    auto& c = raw.at(FrequencySign::positive, h).samples;
    for (std::size_t i = 0; i < c.size(); ++i) {
      const Vec3 k = layout.k(i);
      c[i] = on_polar_axis(k) ? 0.0 : std::exp(-(k - Vec3(0, 0.1, 1.0)).squaredNorm() / 0.4);
    }
  }
  CHECK_THROWS_AS(photon_position_apply(raw), PolarAxis);
}

TEST_CASE("photon current") {
  GridSpec g(8, 0.5);
  MomentumLayout layout(g);
  const std::size_t i = g.flat_signed(1, -2, 1);
  auto s = single_mode(layout, FrequencySign::positive, Helicity::plus, i, Complex(1.0, 2.0));
  auto j = photon_current(s, 0.7);
  for (double v : j.j0) {
    CHECK(v > 0.0);
    CHECK(v == doctest::Approx(j.j0[0]).epsilon(1e-12));
  }
  GridSpec g16(16, 0.5);
  MomentumLayout l16(g16);
  Rng rng(15);
  for (int trial = 0; trial < 2; ++trial) {
    auto r = random_photon(l16, rng);
    for (double t : {0.0, 1.9}) {
      CHECK(residual_oracle(r, t) < 1e-6);
      CHECK(photon_continuity_residual(r, t) < 1e-12);
    }
  }
}

TEST_CASE("Landau-Peierls transform") {
  GridSpec g(16, 0.5);
  MomentumLayout layout(g);
  Rng rng(16);
  auto s = random_photon(layout, rng);
  auto lp = landau_peierls(s);
  CHECK(flat_norm(lp) == doctest::Approx(2.0 * kTwoPi3 * photon_squared_norm(s)).epsilon(1e-12));
  auto twice = landau_peierls(lp);
  for (auto e : kFrequencySigns)
    for (auto h : kHelicities) {
      auto half = apply_power(s.disp(), -0.5, s.at(e, h));
      for (std::size_t i = 0; i < g.size(); ++i)
        CHECK(std::abs(twice.at(e, h).samples[i] - half.samples[i]) <= 1e-14 * std::abs(half.samples[i]));
    }
}

TEST_CASE("two-photon amplitude") {
  GridSpec g(8, 0.6);
  MomentumLayout layout(g);
  const auto pos = FrequencySign::positive;
  Rng rng(17);
  // Disjoint momentum supports make the two one-photon states orthogonal.
  PhotonState a = PhotonState::zeros(layout), b = PhotonState::zeros(layout);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Vec3 k = layout.k(i);
    if (on_polar_axis(k)) continue;
    for (auto h : kHelicities) (k[0] > 0 ? a : b).at(pos, h).samples[i] = rng.complex_normal();
  }
  const auto l1 = Helicity::plus, l2 = Helicity::plus;
  auto pa = photon_wavefunction(a, pos, l1, 0.2), pb = photon_wavefunction(b, pos, l2, 0.2);
  auto pa2 = photon_wavefunction(b, pos, l1, 0.2), pb1 = photon_wavefunction(a, pos, l2, 0.2);

  double na = 0.0, nb = 0.0;
  for (int c = 0; c < 3; ++c)
    for (std::size_t x = 0; x < g.size(); ++x) {
      na += g.dx3() * std::norm(pa[c][x]);
      nb += g.dx3() * std::norm(pb[c][x]);
    }

  // double sum over x1, x2 of the Frobenius norm of the tensor, product and symmetrized
  double prod = 0.0, sym = 0.0;
  for (std::size_t x1 = 0; x1 < g.size(); ++x1)
    for (std::size_t x2 = 0; x2 < g.size(); ++x2)
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          const Complex t = pa[i][x1] * pb[j][x2];
          prod += std::norm(t);
          sym += std::norm((t + pa2[i][x1] * pb1[j][x2]) / std::sqrt(2.0));
        }
  prod *= g.dx3() * g.dx3();
  sym *= g.dx3() * g.dx3();
  CHECK(prod == doctest::Approx(na * nb).epsilon(1e-10));
  CHECK(sym == doctest::Approx(na * nb).epsilon(1e-10));

  for (int n = 0; n < 40; ++n) {
    const std::size_t x1 = std::size_t(rng.uniform() * g.size()), x2 = std::size_t(rng.uniform() * g.size());
    auto t = two_photon_amplitude(a, b, false, g.x_at(x1), g.x_at(x2), l1, l2, 0.2);
    auto ts = two_photon_amplitude(a, b, true, g.x_at(x1), g.x_at(x2), l1, l2, 0.2);
    auto swapped = two_photon_amplitude(a, b, true, g.x_at(x2), g.x_at(x1), l2, l1, 0.2);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        CHECK(std::abs(t(i, j) - pa[i][x1] * pb[j][x2]) < 1e-12 * (1 + std::abs(t(i, j))));
        const Complex ref = (pa[i][x1] * pb[j][x2] + pa2[i][x1] * pb1[j][x2]) / std::sqrt(2.0);
        CHECK(std::abs(ts(i, j) - ref) < 1e-12 * (1 + std::abs(ref)));
        CHECK(std::abs(ts(i, j) - swapped(j, i)) < 1e-12 * (1 + std::abs(ref)));
      }
  }
}
