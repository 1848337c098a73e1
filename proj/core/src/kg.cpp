#include "biortho/kg.hpp"

#include <algorithm>
#include <cmath>

#include "biortho/errors.hpp"
#include "fields.hpp"

namespace biortho {

using detail::Weight;

KGState::KGState(SpectralField c_plus, SpectralField c_minus, Dispersion disp)
    : c_{std::move(c_plus), std::move(c_minus)}, disp_(disp) {
  if (!(c_[0].layout == c_[1].layout)) throw GridMismatch("KGState: components on different layouts");
  if (c_[0].epsilon != FrequencySign::positive || c_[1].epsilon != FrequencySign::negative)
    throw InvalidArgument("KGState: components must carry eps = + and eps = - in that order");
  enforce_zero_mode(c_[0], disp_);
  enforce_zero_mode(c_[1], disp_);
}

KGState KGState::zeros(const MomentumLayout& layout, Dispersion disp, double time_label) {
  return KGState(SpectralField(layout, FrequencySign::positive, std::nullopt, time_label),
                 SpectralField(layout, FrequencySign::negative, std::nullopt, time_label), disp);
}

namespace {

void require_compatible(const KGState& a, const KGState& b) {
  if (!(a.layout() == b.layout()) || !(a.disp() == b.disp()))
    throw GridMismatch("KG states on different layouts or dispersions");
}

}  // namespace

KGState conjugate_amplitudes(const KGState& s) {
  KGState out = s;
  for (auto& v : out.component(FrequencySign::negative).samples) v = -v;
  return out;
}

Complex kg_scalar_product(const KGState& s1, const KGState& s2) {
  require_compatible(s1, s2);
  Complex sum = 0.0;
  for (auto e : kFrequencySigns) {
    const auto& a = s1.component(e);
    const auto& b = s2.component(e);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (s1.disp().singular(a.layout.k(i))) continue;
      sum += covariant_weight(s1.disp(), a.layout, i) * (std::conj(a.samples[i]) * b.samples[i]);
    }
  }
  return sum;
}

double squared_norm(const KGState& s) { return std::real(kg_scalar_product(s, s)); }

double dual_norm(const KGState& s) {
  double sum = 0.0;
  for (auto e : kFrequencySigns) {
    const auto& c = s.component(e);
    for (std::size_t i = 0; i < c.size(); ++i) sum += dual_weight(c.layout, i) * std::norm(c.samples[i]);
  }
  return sum;
}

KGState evolve(const KGState& s, double t) {
  return KGState(evolve(s.c_plus(), s.disp(), t), evolve(s.c_minus(), s.disp(), t), s.disp());
}

KGState scale(const KGState& s, Complex a) {
  KGState out = s;
  for (auto e : kFrequencySigns)
    for (auto& v : out.component(e).samples) v *= a;
  return out;
}

KGState add(const KGState& a, const KGState& b) {
  require_compatible(a, b);
  KGState out = a;
  for (auto e : kFrequencySigns) {
    auto& o = out.component(e);
    const auto& bb = b.component(e);
    if (o.time_label != bb.time_label) throw InvalidArgument("add: components at different reference times");
    for (std::size_t i = 0; i < o.size(); ++i) o.samples[i] += bb.samples[i];
  }
  return out;
}

std::vector<Complex> wavefunction(const KGState& s, FrequencySign eps, double t) {
  return detail::synth_mult(s.component(eps), s.disp(), t, Weight::dual, {});
}

KGDensity probability_density(const KGState& s, double t) {
  const double n = dual_norm(s);
  if (!(n > 0.0)) throw ZeroNorm("probability_density: zero-norm state");
  KGDensity d;
  for (auto e : kFrequencySigns) {
    auto psi = wavefunction(s, e, t);
    std::vector<double> p(psi.size());
    for (std::size_t i = 0; i < psi.size(); ++i) p[i] = 2.0 * std::norm(psi[i]) / n;
    (e == FrequencySign::positive ? d.p_plus : d.p_minus) = std::move(p);
  }
  return d;
}

namespace {

struct Combined {
  detail::FieldDerivs phi;   // phi+ + phi-
  detail::FieldDerivs conj;  // phi+ - phi- or phi+ + phi-
};

void combine(detail::FieldDerivs& acc, const detail::FieldDerivs& d, double sgn, bool second) {
  detail::add_into(acc.f, d.f, sgn);
  detail::add_into(acc.dt, d.dt, sgn);
  for (int a = 0; a < 3; ++a) detail::add_into(acc.grad[a], d.grad[a], sgn);
  if (second) {
    detail::add_into(acc.dtt, d.dtt, sgn);
    detail::add_into(acc.lap, d.lap, sgn);
  }
}

Combined combined_fields(const KGState& s, double t, bool biorthogonal, bool second) {
  Combined c;
  for (auto e : kFrequencySigns) {
    auto d = detail::field_derivs(s.component(e), s.disp(), t, second);
    combine(c.phi, d, 1.0, second);
    combine(c.conj, d, biorthogonal ? double(sign(e)) : 1.0, second);
  }
  return c;
}

FourCurrentSamples current_from(const Combined& c, double t) {
  FourCurrentSamples out;
  out.time_label = t;
  detail::accumulate_current(out.j0, c.phi.f, c.phi.dt, c.conj.f, c.conj.dt, 1.0);
  // Contravariant spatial components: d^i = -d_i.
  for (int a = 0; a < 3; ++a)
    detail::accumulate_current(out.j_vec[a], c.phi.f, c.phi.grad[a], c.conj.f, c.conj.grad[a], -1.0);
  return out;
}

double omega_max(const KGState& s) {
  double w = 0.0;
  for (auto e : kFrequencySigns) {
    const auto& c = s.component(e);
    for (std::size_t i = 0; i < c.size(); ++i)
      if (c.samples[i] != Complex(0.0)) w = std::max(w, s.disp().omega(c.layout.k(i)));
  }
  return w;
}

double residual_from(const Combined& c, double w_max) {
  std::vector<double> dj0, div;
  detail::accumulate_current(dj0, c.phi.f, c.phi.dtt, c.conj.f, c.conj.dtt, 1.0);
  detail::accumulate_current(div, c.phi.f, c.phi.lap, c.conj.f, c.conj.lap, -1.0);
  std::vector<double> j0;
  detail::accumulate_current(j0, c.phi.f, c.phi.dt, c.conj.f, c.conj.dt, 1.0);
  double worst = 0.0;
  for (std::size_t i = 0; i < dj0.size(); ++i) worst = std::max(worst, std::abs(dj0[i] + div[i]));
  const double scale = detail::max_abs(j0) * w_max;
  return scale > 0.0 ? worst / scale : worst;
}

}  // namespace

FourCurrentSamples current_biorthogonal(const KGState& s, double t) {
  return current_from(combined_fields(s, t, true, false), t);
}

FourCurrentSamples current_conventional(const KGState& s, double t) {
  return current_from(combined_fields(s, t, false, false), t);
}

double continuity_residual_biorthogonal(const KGState& s, double t) {
  return residual_from(combined_fields(s, t, true, true), omega_max(s));
}

double continuity_residual_conventional(const KGState& s, double t) {
  return residual_from(combined_fields(s, t, false, true), omega_max(s));
}

PositionExpectation position_expectation(const KGState& s) {
  const double n = dual_norm(s);
  if (!(n > 0.0)) throw ZeroNorm("position_expectation: zero-norm state");
  const GridSpec& grid = s.grid();
  PositionExpectation out;
  Eigen::Vector3cd acc = Eigen::Vector3cd::Zero();
  for (auto e : kFrequencySigns) {
    const auto& c = s.component(e);
    bool any = std::any_of(c.samples.begin(), c.samples.end(), [](Complex v) { return v != Complex(0.0); });
    if (!any) continue;
    out.edge_fraction = std::max(out.edge_fraction, conjugate_edge_fraction(grid, c.samples));
    auto g = k_gradient(grid, c.samples, e);
    for (int a = 0; a < 3; ++a) {
      Complex sum = 0.0;
      for (std::size_t i = 0; i < c.size(); ++i) sum += std::conj(c.samples[i]) * g[a][i];
      acc[a] += dual_weight(c.layout, 0) * sum;
    }
  }
  acc /= n;
  out.value = acc.real();
  out.imag = acc.imag();
  return out;
}

namespace {

void require_massive(const KGState& s) {
  if (!(s.disp().mass() > 0.0))
    throw SingularMode("Newton-Wigner operator needs mass > 0 (omega^{-1/2} diverges at k = 0)");
}

}  // namespace

std::array<KGState, 3> nw_apply(const KGState& s) {
  require_massive(s);
  const GridSpec& grid = s.grid();
  std::array<KGState, 3> out{s, s, s};
  for (auto e : kFrequencySigns) {
    const auto& c = s.component(e);
    std::vector<Complex> u(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) u[i] = c.samples[i] / std::sqrt(s.disp().omega(c.layout.k(i)));
    auto g = k_gradient(grid, u, e);
    for (int a = 0; a < 3; ++a) {
      auto& o = out[a].component(e).samples;
      for (std::size_t i = 0; i < c.size(); ++i) o[i] = std::sqrt(s.disp().omega(c.layout.k(i))) * g[a][i];
    }
  }
  return out;
}

double nw_identity_residual(const KGState& s) {
  require_massive(s);
  const GridSpec& grid = s.grid();
  const auto nw = nw_apply(s);
  const Complex i(0.0, 1.0);
  double worst = 0.0, scale = 0.0;
  for (auto e : kFrequencySigns) {
    const auto& c = s.component(e);
    auto g = k_gradient(grid, c.samples, e);
    for (int a = 0; a < 3; ++a) {
      const auto& o = nw[a].component(e).samples;
      for (std::size_t n = 0; n < c.size(); ++n) {
        const Vec3& k = c.layout.k(n);
        const double w = s.disp().omega(k);
        const Complex expanded = g[a][n] - double(sign(e)) * i * k[a] / (2.0 * w * w) * c.samples[n];
        worst = std::max(worst, std::abs(o[n] - expanded));
        scale = std::max(scale, std::abs(expanded));
      }
    }
  }
  return scale > 0.0 ? worst / scale : worst;
}

Vec3 nw_expectation(const KGState& s) {
  const double n = squared_norm(s);
  if (!(n > 0.0)) throw ZeroNorm("nw_expectation: zero-norm state");
  const auto nw = nw_apply(s);
  Vec3 out;
  for (int a = 0; a < 3; ++a) out[a] = std::real(kg_scalar_product(s, nw[a])) / n;
  return out;
}

KGState position_eigenstate(const MomentumLayout& layout, const Dispersion& disp, FrequencySign eps,
                            const Vec3& y, double t) {
  KGState s = KGState::zeros(layout, disp, t);
  auto& c = s.component(eps);
  const double e = sign(eps);
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (disp.singular(layout.k(i))) continue;
    c.samples[i] = std::polar(1.0, -e * layout.k(i).dot(y));
  }
  return s;
}

KGState resolve_identity(const KGState& s, double t) {
  const GridSpec& grid = s.grid();
  KGState out = s;
  for (auto e : kFrequencySigns) {
    auto psi = wavefunction(s, e, t);
    auto c = to_momentum(grid, std::move(psi), e);
    auto& o = out.component(e);
    const double tau = o.time_label;
    for (std::size_t i = 0; i < c.size(); ++i) {
      const Vec3& k = o.layout.k(i);
      if (s.disp().singular(k)) {
        o.samples[i] = 0.0;
        continue;
      }
      o.samples[i] = 2.0 * grid.dx3() * c[i] * std::polar(1.0, sign(e) * s.disp().omega(k) * (t - tau));
    }
  }
  return out;
}

double biorthogonality_error(const MomentumLayout& layout, const Dispersion& disp, double t) {
  const GridSpec& grid = layout.grid();
  double worst = 0.0;
  for (auto ep : kFrequencySigns) {
    for (std::size_t y = 0; y < grid.size(); ++y) {
      KGState st = position_eigenstate(layout, disp, ep, grid.x_at(y), t);
      for (auto e : kFrequencySigns) {
        auto psi = wavefunction(st, e, t);
        for (std::size_t x = 0; x < psi.size(); ++x) {
          const double target = (e == ep && x == y) ? 1.0 : 0.0;
          worst = std::max(worst, std::abs(2.0 * grid.dx3() * psi[x] - target));
        }
      }
    }
  }
  return worst;
}

KGState localized_state(const MomentumLayout& layout, const Dispersion& disp, double sigma,
                        ProbeMode mode) {
  const GridSpec& grid = layout.grid();
  std::vector<Complex> g(grid.size());
  for (std::size_t i = 0; i < g.size(); ++i)
    g[i] = std::exp(-grid.x_at(i).squaredNorm() / (2.0 * sigma * sigma));
  KGState s = KGState::zeros(layout, disp, 0.0);
  // c^eps(k) = 2 dx^3 sum_x exp(-i eps k.x) psi^eps(x) at t = 0.
  const double share = mode == ProbeMode::positive_only ? 1.0 : 0.5;
  for (auto e : kFrequencySigns) {
    if (mode == ProbeMode::positive_only && e == FrequencySign::negative) continue;
    auto c = to_momentum(grid, g, e);
    auto& o = s.component(e);
    for (std::size_t i = 0; i < c.size(); ++i)
      o.samples[i] = disp.singular(layout.k(i)) ? Complex(0.0) : 2.0 * grid.dx3() * share * c[i];
  }
  return s;
}

namespace {

double outside_fraction(const GridSpec& grid, const std::vector<double>& p, double radius) {
  double out = 0.0, total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    total += p[i];
    if (grid.x_at(i).norm() > radius) out += p[i];
  }
  return total > 0.0 ? out / total : 0.0;
}

std::vector<double> probe_density(const KGState& s, double t, ProbeMode mode) {
  if (mode == ProbeMode::positive_only) {
    KGState pos = s;
    for (auto& v : pos.component(FrequencySign::negative).samples) v = 0.0;
    auto d = probability_density(pos, t);
    return d.p_plus;
  }
  auto a = wavefunction(s, FrequencySign::positive, t);
  auto b = wavefunction(s, FrequencySign::negative, t);
  std::vector<double> p(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) p[i] = std::norm(a[i] + b[i]);
  return p;
}

}  // namespace

CausalityReport causality_probe(const KGState& initial, double t, ProbeMode mode,
                                double support_radius) {
  if (t < 0.0) throw InvalidArgument("causality_probe: t must be nonnegative");
  const GridSpec& grid = initial.grid();
  CausalityReport r;
  r.t = t;
  r.radius = support_radius + t + 2.0 * grid.dx();
  r.baseline = outside_fraction(grid, probe_density(initial, 0.0, mode), support_radius + 2.0 * grid.dx());
  r.outside_fraction = outside_fraction(grid, probe_density(initial, t, mode), r.radius);
  return r;
}

}  // namespace biortho
