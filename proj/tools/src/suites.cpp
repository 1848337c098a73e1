#include <algorithm>
#include <cmath>

#include "biortho/biortho.hpp"
#include "biortho_cli/cli.hpp"

namespace biortho::cli {

namespace {

struct Collector {
  std::string suite;
  std::vector<CheckResult> rows;
  // value <= threshold passes
  void at_most(const std::string& check, double value, double threshold) {
    rows.push_back({suite, check, value, threshold, value <= threshold});
  }
  void at_least(const std::string& check, double value, double threshold) {
    rows.push_back({suite, check, value, threshold, value >= threshold});
  }
};

std::vector<SpectralField> random_fields(Rng& rng, const MomentumLayout& layout, int count) {
  std::vector<SpectralField> out;
  for (int i = 0; i < count; ++i)
    out.emplace_back(layout, wavepacket_samples(layout, random_packets(rng, {})),
                     i % 2 ? FrequencySign::negative : FrequencySign::positive);
  return out;
}

KGState random_kg(Rng& rng, const MomentumLayout& layout, const Dispersion& d) {
  KGState s = KGState::zeros(layout, d);
  for (auto e : kFrequencySigns) s.component(e).samples = wavepacket_samples(layout, random_packets(rng, {}));
  return KGState(s.c_plus(), s.c_minus(), d);
}

PhotonState random_photon(Rng& rng, const MomentumLayout& layout) {
  std::vector<SpectralField> f;
  for (auto e : kFrequencySigns)
    for (auto h : kHelicities) f.emplace_back(layout, wavepacket_samples(layout, random_packets(rng, {})), e, h);
  return PhotonState(std::move(f));
}

double max_rel(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  double diff = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    diff = std::max(diff, std::abs(a[i] - b[i]));
    scale = std::max(scale, std::abs(b[i]));
  }
  return scale > 0.0 ? diff / scale : diff;
}

void spectral_suite(const RunConfig& c, Collector& out) {
  Rng rng(derive_seed(c.seed, "spectral"));
  GridSpec g(c.grid, c.dk);
  MomentumLayout layout(g);
  Dispersion d(c.mass);
  double round_trip = 0.0, group = 0.0;
  for (auto& f : random_fields(rng, layout, c.states)) {
    enforce_zero_mode(f, d);
    auto back = analyze(synthesize(f, d, c.t), f.epsilon, d, g, c.t);
    round_trip = std::max(round_trip, max_rel(back.samples, f.samples));
    if (d.mass() > 0.0) {
      auto two = apply_power(d, 0.3, apply_power(d, 0.45, f));
      group = std::max(group, max_rel(two.samples, apply_power(d, 0.75, f).samples));
    }
  }
  out.at_most("analyze_round_trip", round_trip, 1e-12);
  out.at_most("power_group_law", group, 1e-14);
  auto q = SphericalQuadrature::gauss_legendre(0.5, 1.5, 16, 8, 16);
  out.at_most("quadrature_self_test", q.radial_self_test(), 1e-13);
}

void kg_suite(const RunConfig& c, Collector& out) {
  Rng rng(derive_seed(c.seed, "kg"));
  GridSpec g(c.grid, c.dk);
  MomentumLayout layout(g);
  Dispersion d(c.mass);
  double lo = 0.0, norm = 0.0, cont_b = 0.0, cont_c = 0.0;
  for (int n = 0; n < c.states; ++n) {
    auto s = random_kg(rng, layout, d);
    auto p = probability_density(s, c.t);
    double total = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      total += g.dx3() * (p.p_plus[i] + p.p_minus[i]);
      lo = std::min({lo, p.p_plus[i], p.p_minus[i]});
    }
    norm = std::max(norm, std::abs(total - 1.0));
    for (double t : {c.t, c.t + 1.3}) {
      cont_b = std::max(cont_b, continuity_residual_biorthogonal(s, t));
      cont_c = std::max(cont_c, continuity_residual_conventional(s, t));
    }
  }
  out.at_least("density_min", lo, -1e-12);
  out.at_most("density_normalization", norm, 1e-8);
  out.at_most("continuity_biorthogonal", cont_b, 1e-6);
  out.at_most("continuity_conventional", cont_c, 1e-6);

  GridSpec small(8, c.dk);
  MomentumLayout sl(small);
  const Dispersion dm(c.mass > 0.0 ? c.mass : 1.0);
  out.at_most("biorthogonality", biorthogonality_error(sl, dm, c.t), 1e-10);
  KGState r = KGState::zeros(sl, dm);
  for (auto e : kFrequencySigns)
    for (auto& v : r.component(e).samples) v = rng.complex_normal();
  auto back = resolve_identity(r, c.t);
  double rec = 0.0;
  for (auto e : kFrequencySigns) rec = std::max(rec, max_rel(back.component(e).samples, r.component(e).samples));
  out.at_most("completeness", rec, 1e-10);

  // Newton-Wigner identity on a grid wide enough for spectral gradients.
  GridSpec wide(48, 0.2);
  MomentumLayout wl(wide);
  PacketOptions opt;
  opt.count = 2;
  opt.k_center_scale = 0.3;
  opt.k_width_min = opt.k_width_max = 0.5;
  opt.x_center_scale = 0.5;
  const Dispersion heavy(2.0);
  double nw = 0.0;
  for (int n = 0; n < std::min(c.states, 5); ++n) {
    KGState s = KGState::zeros(wl, heavy);
    for (auto e : kFrequencySigns) s.component(e).samples = wavepacket_samples(wl, random_packets(rng, opt));
    nw = std::max(nw, nw_identity_residual(KGState(s.c_plus(), s.c_minus(), heavy)));
  }
  out.at_most("newton_wigner_identity", nw, 1e-8);
}

void photon_suite(const RunConfig& c, Collector& out) {
  Rng rng(derive_seed(c.seed, "photon"));
  GridSpec g(c.grid, c.dk);
  MomentumLayout layout(g);
  double lo = 0.0, norm = 0.0, cont = 0.0, lp = 0.0;
  for (int n = 0; n < c.states; ++n) {
    auto s = random_photon(rng, layout);
    auto p = photon_probability_density(s, c.t);
    double total = 0.0;
    for (const auto& arr : p.p)
      for (double v : arr) {
        total += g.dx3() * v;
        lo = std::min(lo, v);
      }
    norm = std::max(norm, std::abs(total - 1.0));
    cont = std::max(cont, photon_continuity_residual(s, c.t));
    const double ref = 2.0 * kTwoPi3 * photon_squared_norm(s);
    lp = std::max(lp, std::abs(flat_norm(landau_peierls(s)) - ref) / ref);
  }
  out.at_least("density_min", lo, -1e-12);
  out.at_most("density_normalization", norm, 1e-8);
  out.at_most("continuity", cont, 1e-6);
  out.at_most("landau_peierls_norm", lp, 1e-12);

  std::vector<Vec3> ks;
  while (ks.size() < 10000) {
    const Vec3 k = rng.normal3() * rng.uniform(0.01, 10.0);
    if (!on_polar_axis(k)) ks.push_back(k);
  }
  out.at_most("transverse_projector", transverse_delta_check(ks), 1e-12);
  out.at_most("biorthogonality", photon_biorthogonality_error(MomentumLayout(GridSpec(8, c.dk)), c.t), 1e-10);
}

void emission_suite(const RunConfig& c, Collector& out) {
  const double omega0 = c.omega0, W = c.window;
  const CVec3 d(Complex(c.dipole[0], c.dipole[1]), Complex(c.dipole[2], c.dipole[3]), Complex(c.dipole[4], c.dipole[5]));

  auto m0 = EmissionModel::with_window(omega0, d, c.g0, W, 64, 8, 16);
  double res = 0.0;
  for (double t : {1.0, 10.0, 100.0}) {
    const Vec3 k = omega0 * Vec3(0.6, 0.0, 0.8);
    for (auto h : kHelicities) {
      const Complex M = c.g0 * helicity_triad(k).e(h).dot(d);
      const Complex ref = Complex(0.0, -1.0) * M * t;
      if (std::abs(ref) > 0.0) res = std::max(res, std::abs(emission_amplitude(m0, h, k, t) - ref) / std::abs(ref));
    }
  }
  out.at_most("resonance_limit", res, 1e-9);

  const double t_hi = 200.0 / omega0;
  auto m = EmissionModel::with_window(omega0, d, c.g0, W, EmissionModel::radial_nodes_for(W, t_hi), 6, 8);
  std::vector<double> ts, ns;
  for (int i = 0; i <= 30; ++i) {
    ts.push_back((50.0 + 5.0 * i) / omega0);
    ns.push_back(photon_number(m, ts.back()));
  }
  const double n = double(ts.size());
  double st = 0, sn = 0, stt = 0, stn = 0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    st += ts[i];
    sn += ns[i];
    stt += ts[i] * ts[i];
    stn += ts[i] * ns[i];
  }
  const double slope = (n * stn - st * sn) / (n * stt - st * st), icept = (sn - slope * st) / n;
  double ss_res = 0, ss_tot = 0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    ss_res += std::pow(ns[i] - icept - slope * ts[i], 2);
    ss_tot += std::pow(ns[i] - sn / n, 2);
  }
  out.at_least("golden_rule_r2", 1.0 - ss_res / ss_tot, 0.999);

  const double t = 100.0 / omega0, dr = 0.1 / omega0;
  auto mw = EmissionModel::with_window(omega0, d, c.g0, W, EmissionModel::radial_nodes_for(W, t, 1.2 * t), 4, 6);
  std::vector<double> radii;
  for (double r = 0.8 * t; r <= 1.2 * t; r += dr) radii.push_back(r);
  const double front = wavefront_radius(radii, radial_density(mw, t, radii));
  out.at_most("wavefront_offset", std::abs(front - t), std::max(dr, 0.5 / omega0));
}

void lorentz_suite(const RunConfig& c, Collector& out) {
  Rng rng(derive_seed(c.seed, "lorentz"));
  const Dispersion d(c.mass > 0.0 ? c.mass : 1.0);
  double shell = 0.0;
  for (int n = 0; n < 10000; ++n) {
    const Boost b(rng.uniform(-1.0, 1.0), rng.unit_vector());
    const auto e = rng.uniform() < 0.5 ? FrequencySign::positive : FrequencySign::negative;
    const auto r = boost_k(b, d, 3.0 * rng.normal3(), e);
    shell = std::max(shell, std::abs(r.omega * r.omega - r.k.squaredNorm() - d.mass() * d.mass()) /
                                std::max(1.0, r.omega * r.omega));
  }
  out.at_most("on_shell", shell, 1e-12);

  auto state = [&] {
    const Vec3 k0 = 0.5 * rng.normal3(), x0 = 0.5 * rng.normal3();
    const double sigma = rng.uniform(0.5, 0.7);
    const Complex amp = rng.complex_normal();
    return ProfileState{d, gaussian_profile(k0, sigma, x0, amp), gaussian_profile(-k0, sigma, -x0, std::conj(amp)),
                        gaussian_support(k0, sigma), gaussian_support(-k0, sigma)};
  };
  const auto a = state(), b = state();
  const Vec3 axis = rng.unit_vector();
  double rel = 0.0, drift = 0.0;
  for (double eta : {0.2, 0.5, 1.0}) {
    auto r = invariance_check(Boost(eta, axis), a, b);
    rel = std::max(rel, r.rel_err);
    drift = std::max(drift, r.drift);
  }
  out.at_most("invariance_rel_err", rel, 1e-6);
  out.at_most("quadrature_drift", drift, 1e-8);
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"spectral", "kg", "photon", "emission", "lorentz"};
  return names;
}

std::vector<CheckResult> run_suite(const std::string& name, const RunConfig& cfg) {
  Collector c{name, {}};
  if (name == "spectral") spectral_suite(cfg, c);
  else if (name == "kg") kg_suite(cfg, c);
  else if (name == "photon") photon_suite(cfg, c);
  else if (name == "emission") emission_suite(cfg, c);
  else if (name == "lorentz") lorentz_suite(cfg, c);
  else throw ConfigError("unknown suite: " + name);
  return c.rows;
}

}  // namespace biortho::cli
