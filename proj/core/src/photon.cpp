#include "biortho/photon.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "biortho/errors.hpp"
#include "fields.hpp"

namespace biortho {

using detail::Weight;

bool on_polar_axis(const Vec3& k) {
  const double kn = k.norm();
  if (kn == 0.0) return true;
  return std::hypot(k[0], k[1]) < kPolarAxisTolerance * kn;
}

HelicityTriad helicity_triad(const Vec3& k) {
  const double kn = k.norm();
  if (kn == 0.0) throw ZeroVector("helicity_triad: k = 0");
  const double rho = std::hypot(k[0], k[1]);
  const double st = rho / kn;
  if (st < kPolarAxisTolerance) throw PolarAxis("helicity_triad: k on the polar axis");
  const double ct = k[2] / kn;
  const double cp = k[0] / rho;
  const double sp = k[1] / rho;
  HelicityTriad t;
  t.k_hat = k / kn;
  t.e_theta = Vec3(ct * cp, ct * sp, -st);
  t.e_phi = Vec3(-sp, cp, 0.0);
  const double r = 1.0 / std::sqrt(2.0);
  const Complex i(0.0, 1.0);
  t.e_plus = r * (t.e_theta.cast<Complex>() + i * t.e_phi.cast<Complex>());
  t.e_minus = r * (t.e_theta.cast<Complex>() - i * t.e_phi.cast<Complex>());
  return t;
}

PhotonState::PhotonState(std::vector<SpectralField> fields) : c_(std::move(fields)) {
  if (c_.size() != 4) throw InvalidArgument("PhotonState: expected four (eps, lambda) fields");
  for (auto e : kFrequencySigns) {
    for (auto h : kHelicities) {
      auto& f = c_[slot(e, h)];
      if (f.epsilon != e || f.helicity != h)
        throw InvalidArgument("PhotonState: field tags do not match their (eps, lambda) slot");
      if (!(f.layout == c_[0].layout)) throw GridMismatch("PhotonState: components on different layouts");
      for (std::size_t i = 0; i < f.size(); ++i) {
        if (on_polar_axis(f.layout.k(i))) {
          if (f.samples[i] != Complex(0.0)) ++masked_;
          f.samples[i] = 0.0;
        }
      }
    }
  }
}

PhotonState PhotonState::zeros(const MomentumLayout& layout, double time_label) {
  std::vector<SpectralField> f;
  for (auto e : kFrequencySigns)
    for (auto h : kHelicities) f.emplace_back(layout, e, h, time_label);
  return PhotonState(std::move(f));
}

double axis_mask(const Vec3& k, double rho0, double rho1) {
  const double rho = std::hypot(k[0], k[1]);
  if (rho <= rho0) return 0.0;
  if (rho >= rho1) return 1.0;
  auto f = [](double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; };
  const double u = (rho - rho0) / (rho1 - rho0);
  return f(u) / (f(u) + f(1.0 - u));
}

PhotonState scale(const PhotonState& s, Complex a) {
  PhotonState out = s;
  for (auto e : kFrequencySigns)
    for (auto h : kHelicities)
      for (auto& v : out.at(e, h).samples) v *= a;
  return out;
}

namespace {

void require_compatible(const PhotonState& a, const PhotonState& b) {
  if (!(a.layout() == b.layout())) throw GridMismatch("photon states on different layouts");
}

template <class Fn>
double weighted_sum(const PhotonState& s, Fn weight) {
  double sum = 0.0;
  for (auto e : kFrequencySigns)
    for (auto h : kHelicities) {
      const auto& c = s.at(e, h);
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (c.samples[i] == Complex(0.0)) continue;
        sum += weight(i) * std::norm(c.samples[i]);
      }
    }
  return sum;
}

}  // namespace

Complex photon_scalar_product(const PhotonState& s1, const PhotonState& s2) {
  require_compatible(s1, s2);
  Complex sum = 0.0;
  for (auto e : kFrequencySigns)
    for (auto h : kHelicities) {
      const auto& a = s1.at(e, h);
      const auto& b = s2.at(e, h);
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (on_polar_axis(a.layout.k(i))) continue;
        sum += covariant_weight(s1.disp(), a.layout, i) * (std::conj(a.samples[i]) * b.samples[i]);
      }
    }
  return sum;
}

double photon_squared_norm(const PhotonState& s) { return std::real(photon_scalar_product(s, s)); }

double photon_dual_norm(const PhotonState& s) {
  return weighted_sum(s, [&](std::size_t i) { return dual_weight(s.layout(), i); });
}

double flat_norm(const PhotonState& s) {
  return weighted_sum(s, [&](std::size_t i) { return s.layout().measure(i); });
}

namespace {

struct PolarizationTable {
  // [slot of helicity][component][sample]
  std::array<std::array<std::vector<Complex>, 3>, 2> e;
  explicit PolarizationTable(const MomentumLayout& layout) {
    for (int a = 0; a < 3; ++a) {
      e[0][a].assign(layout.size(), Complex(0.0));
      e[1][a].assign(layout.size(), Complex(0.0));
    }
    for (std::size_t i = 0; i < layout.size(); ++i) {
      if (on_polar_axis(layout.k(i))) continue;
      const auto t = helicity_triad(layout.k(i));
      for (int a = 0; a < 3; ++a) {
        e[0][a][i] = t.e_plus[a];
        e[1][a][i] = t.e_minus[a];
      }
    }
  }
  const std::vector<Complex>& at(Helicity h, int a) const { return e[index(h)][a]; }
};

}  // namespace

VectorField photon_wavefunction(const PhotonState& s, FrequencySign eps, Helicity h, double t) {
  const auto& f = s.at(eps, h);
  const MomentumLayout& layout = s.layout();
  const double e = sign(eps);
  const double dt = t - f.time_label;
  const Complex i(0.0, 1.0);
  VectorField out;
  for (auto& c : out) c.assign(f.size(), Complex(0.0));
  for (std::size_t n = 0; n < f.size(); ++n) {
    if (f.samples[n] == Complex(0.0)) continue;
    const Vec3& k = layout.k(n);
    if (on_polar_axis(k)) continue;
    if (s.disp().singular(k)) throw SingularMode("nonzero sample on the massless k = 0 mode");
    const Complex base = i * dual_weight(layout, n) * f.samples[n] * std::polar(1.0, -e * s.disp().omega(k) * dt);
    const CVec3 pol = helicity_triad(k).e(h);
    for (int a = 0; a < 3; ++a) out[a][n] = base * pol[a];
  }
  for (auto& c : out) c = to_position(layout.grid(), std::move(c), eps);
  return out;
}

std::vector<CVec3> photon_wavefunction_at(const PhotonState& s, FrequencySign eps, Helicity h,
                                          double t, std::span<const Vec3> points) {
  const auto& f = s.at(eps, h);
  const MomentumLayout& layout = s.layout();
  const double e = sign(eps);
  const Complex i(0.0, 1.0);
  std::vector<std::size_t> idx;
  std::vector<CVec3> amp;
  for (std::size_t n = 0; n < f.size(); ++n) {
    if (f.samples[n] == Complex(0.0)) continue;
    const Vec3& k = layout.k(n);
    const Complex a = i * dual_weight(layout, n) * f.samples[n] *
                      std::polar(1.0, -e * s.disp().omega(k) * (t - f.time_label));
    idx.push_back(n);
    amp.push_back(a * helicity_triad(k).e(h));
  }
  std::vector<CVec3> out(points.size(), CVec3::Zero());
  for (std::size_t p = 0; p < points.size(); ++p) {
    CVec3 sum = CVec3::Zero();
    for (std::size_t m = 0; m < idx.size(); ++m)
      sum += amp[m] * std::polar(1.0, e * layout.k(idx[m]).dot(points[p]));
    out[p] = sum;
  }
  return out;
}

PhotonDensity photon_probability_density(const PhotonState& s, double t) {
  const double n = photon_dual_norm(s);
  if (!(n > 0.0)) throw ZeroNorm("photon_probability_density: zero-norm state");
  PhotonDensity d;
  for (auto e : kFrequencySigns)
    for (auto h : kHelicities) {
      auto& p = d.p[PhotonState::slot(e, h)];
      p.assign(s.layout().is_grid() ? s.grid().size() : 0, 0.0);
      bool any = false;
      for (auto v : s.at(e, h).samples) any = any || v != Complex(0.0);
      if (!any) continue;
      auto psi = photon_wavefunction(s, e, h, t);
      for (std::size_t i = 0; i < p.size(); ++i)
        p[i] = 2.0 * (std::norm(psi[0][i]) + std::norm(psi[1][i]) + std::norm(psi[2][i])) / n;
    }
  return d;
}

PhotonDensity momentum_probability(const PhotonState& s) {
  const double n = flat_norm(s);
  if (!(n > 0.0)) throw ZeroNorm("momentum_probability: zero-norm state");
  PhotonDensity d;
  for (auto e : kFrequencySigns)
    for (auto h : kHelicities) {
      const auto& c = s.at(e, h).samples;
      auto& p = d.p[PhotonState::slot(e, h)];
      p.resize(c.size());
      for (std::size_t i = 0; i < c.size(); ++i) p[i] = std::norm(c[i]) / n;
    }
  return d;
}

Eigen::Matrix3cd transverse_projector(const Vec3& k) {
  const auto t = helicity_triad(k);
  return t.e_plus * t.e_plus.adjoint() + t.e_minus * t.e_minus.adjoint();
}

Eigen::Matrix3d closed_form_transverse_projector(const Vec3& k) {
  const double k2 = k.squaredNorm();
  if (k2 == 0.0) throw ZeroVector("transverse projector at k = 0");
  return Eigen::Matrix3d::Identity() - k * k.transpose() / k2;
}

double transverse_delta_check(std::span<const Vec3> ks) {
  double worst = 0.0;
  for (const auto& k : ks) {
    if (on_polar_axis(k)) continue;
    const Eigen::Matrix3cd d = transverse_projector(k) - closed_form_transverse_projector(k).cast<Complex>();
    worst = std::max(worst, d.cwiseAbs().maxCoeff());
  }
  return worst;
}

double transverse_delta_check(const MomentumLayout& layout) {
  return transverse_delta_check(std::span<const Vec3>(layout.momenta()));
}

Eigen::Matrix3d fixed_frame_rotation(const Vec3& k) {
  const auto t = helicity_triad(k);
  Eigen::Matrix3d r;
  r.row(0) = t.e_theta.transpose();
  r.row(1) = t.e_phi.transpose();
  r.row(2) = t.k_hat.transpose();
  return r;
}

namespace {

void require_off_axis(const PhotonState& s) {
  const GridSpec& grid = s.grid();
  const double collar = 2.0 * grid.dk() * (1.0 + 1e-12);
  double peak = 0.0;
  for (auto e : kFrequencySigns)
    for (auto h : kHelicities)
      for (auto v : s.at(e, h).samples) peak = std::max(peak, std::abs(v));
  for (auto e : kFrequencySigns)
    for (auto h : kHelicities) {
      const auto& c = s.at(e, h);
      for (std::size_t i = 0; i < c.size(); ++i) {
        const Vec3& k = c.layout.k(i);
        if (std::hypot(k[0], k[1]) <= collar && std::abs(c.samples[i]) > 1e-12 * peak)
          throw PolarAxis("photon position operator: state support touches the polar-axis collar");
      }
    }
}

}  // namespace

std::array<PhotonState, 3> photon_position_apply(const PhotonState& s) {
  require_off_axis(s);
  const MomentumLayout& layout = s.layout();
  const GridSpec& grid = s.grid();
  const std::size_t n = layout.size();
  // u_lambda(k) = R(k) e_lambda(k): the helicity vectors in the fixed frame.
  std::array<std::array<std::vector<Complex>, 3>, 2> u;
  for (auto h : kHelicities)
    for (int j = 0; j < 3; ++j) u[index(h)][j].assign(n, Complex(0.0));
  for (std::size_t i = 0; i < n; ++i) {
    const Vec3& k = layout.k(i);
    if (on_polar_axis(k)) continue;
    const Eigen::Matrix3d r = fixed_frame_rotation(k);
    const auto t = helicity_triad(k);
    for (auto h : kHelicities) {
      const CVec3 v = r.cast<Complex>() * t.e(h);
      for (int j = 0; j < 3; ++j) u[index(h)][j][i] = v[j];
    }
  }
  std::array<PhotonState, 3> out{s, s, s};
  for (auto e : kFrequencySigns) {
    // grads[j][a]: eps i d_a of the fixed-frame component j.
    std::array<std::vector<Complex>, 3> v;
    // The k_hat component is pure rounding noise, so the wrap guard is taken
    // over the whole vector rather than per component.
    double edge = 0.0, total = 0.0;
    for (int j = 0; j < 3; ++j) {
      v[j].assign(n, Complex(0.0));
      for (auto h : kHelicities) {
        const auto& c = s.at(e, h).samples;
        for (std::size_t i = 0; i < n; ++i) v[j][i] += u[index(h)][j][i] * c[i];
      }
      double norm = 0.0;
      for (const auto& x : v[j]) norm += std::norm(x);
      edge += conjugate_edge_fraction(grid, v[j]) * norm;
      total += norm;
    }
    if (total > 0.0 && edge / total > kEdgeTolerance)
      throw BoundaryWrap("photon position operator: amplitude not negligible at the grid edge (fraction " +
                         std::to_string(edge / total) + ")");
    std::array<std::array<std::vector<Complex>, 3>, 3> grads;
    for (int j = 0; j < 3; ++j) grads[j] = k_gradient(grid, v[j], e, 1.0);
    for (int a = 0; a < 3; ++a)
      for (auto h : kHelicities) {
        auto& o = out[a].at(e, h).samples;
        for (std::size_t i = 0; i < n; ++i) {
          Complex sum = 0.0;
          for (int j = 0; j < 3; ++j) sum += std::conj(u[index(h)][j][i]) * grads[j][a][i];
          o[i] = sum;
        }
      }
  }
  return out;
}

double photon_position_commutator_residual(const PhotonState& s) {
  const auto x = photon_position_apply(s);
  std::array<std::array<PhotonState, 3>, 3> xx{photon_position_apply(x[0]), photon_position_apply(x[1]),
                                               photon_position_apply(x[2])};
  double worst = 0.0, scale = 0.0;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      if (a == b) continue;
      for (auto e : kFrequencySigns)
        for (auto h : kHelicities) {
          const auto& ab = xx[b][a].at(e, h).samples;  // x_a (x_b s)
          const auto& ba = xx[a][b].at(e, h).samples;
          for (std::size_t i = 0; i < ab.size(); ++i) {
            worst = std::max(worst, std::abs(ab[i] - ba[i]));
            scale = std::max(scale, std::abs(ab[i]));
          }
        }
    }
  return scale > 0.0 ? worst / scale : worst;
}

Vec3 photon_position_expectation(const PhotonState& s) {
  const double n = photon_dual_norm(s);
  if (!(n > 0.0)) throw ZeroNorm("photon_position_expectation: zero-norm state");
  const auto x = photon_position_apply(s);
  Vec3 out;
  for (int a = 0; a < 3; ++a) {
    Complex sum = 0.0;
    for (auto e : kFrequencySigns)
      for (auto h : kHelicities) {
        const auto& c = s.at(e, h).samples;
        const auto& xc = x[a].at(e, h).samples;
        for (std::size_t i = 0; i < c.size(); ++i)
          sum += dual_weight(s.layout(), i) * std::conj(c[i]) * xc[i];
      }
    out[a] = std::real(sum) / n;
  }
  return out;
}

PhotonState photon_position_eigenstate(const MomentumLayout& layout, FrequencySign eps,
                                       Helicity sigma, std::optional<int> component,
                                       const Vec3& y, double t) {
  PhotonState s = PhotonState::zeros(layout, t);
  auto& c = s.at(eps, sigma);
  const double e = sign(eps);
  const Complex i(0.0, 1.0);
  for (std::size_t n = 0; n < c.size(); ++n) {
    const Vec3& k = layout.k(n);
    if (on_polar_axis(k)) continue;
    Complex pol = 1.0;
    if (component) pol = std::conj(helicity_triad(k).e(sigma)[*component]);
    c.samples[n] = -i * pol * std::polar(1.0, -e * k.dot(y));
  }
  return s;
}

PhotonState photon_resolve_identity(const PhotonState& s, double t) {
  const GridSpec& grid = s.grid();
  const MomentumLayout& layout = s.layout();
  const PolarizationTable pol(layout);
  PhotonState out = s;
  const Complex i(0.0, 1.0);
  for (auto e : kFrequencySigns)
    for (auto h : kHelicities) {
      auto psi = photon_wavefunction(s, e, h, t);
      std::array<std::vector<Complex>, 3> ck;
      for (int a = 0; a < 3; ++a) ck[a] = to_momentum(grid, std::move(psi[a]), e);
      auto& o = out.at(e, h);
      for (std::size_t n = 0; n < o.size(); ++n) {
        const Vec3& k = layout.k(n);
        if (on_polar_axis(k)) {
          o.samples[n] = 0.0;
          continue;
        }
        Complex dot = 0.0;
        for (int a = 0; a < 3; ++a) dot += std::conj(pol.at(h, a)[n]) * ck[a][n];
        o.samples[n] = -i * 2.0 * grid.dx3() * dot *
                       std::polar(1.0, sign(e) * s.disp().omega(k) * (t - o.time_label));
      }
    }
  return out;
}

double photon_biorthogonality_error(const MomentumLayout& layout, double t) {
  const GridSpec& grid = layout.grid();
  const std::size_t n = grid.size();
  // Reference columns: (1/2) delta_perp_ij(x) from the closed-form projector.
  std::array<std::array<std::vector<Complex>, 3>, 2> ref;  // [eps][i*3+j flattened below]
  std::array<std::array<std::vector<Complex>, 9>, 2> delta;
  for (auto e : kFrequencySigns)
    for (int ij = 0; ij < 9; ++ij) {
      std::vector<Complex> a(n, Complex(0.0));
      for (std::size_t m = 0; m < n; ++m) {
        const Vec3& k = layout.k(m);
        if (on_polar_axis(k)) continue;
        a[m] = dual_weight(layout, m) * closed_form_transverse_projector(k)(ij / 3, ij % 3);
      }
      delta[index(e)][ij] = to_position(grid, std::move(a), e);
    }
  (void)ref;
  double worst = 0.0;
  const double scale = 2.0 * grid.dx3();
  for (auto ep : kFrequencySigns)
    for (int j = 0; j < 3; ++j)
      for (std::size_t y = 0; y < n; ++y) {
        const Vec3 yv = grid.x_at(y);
        std::array<std::array<std::vector<Complex>, 3>, 2> summed;  // [eps][i]
        for (auto e : kFrequencySigns)
          for (int a = 0; a < 3; ++a) summed[index(e)][a].assign(n, Complex(0.0));
        for (auto sigma : kHelicities) {
          PhotonState st = photon_position_eigenstate(layout, ep, sigma, j, yv, t);
          for (auto e : kFrequencySigns)
            for (auto h : kHelicities) {
              auto psi = photon_wavefunction(st, e, h, t);
              for (int a = 0; a < 3; ++a)
                for (std::size_t x = 0; x < n; ++x) {
                  if (e != ep || h != sigma)
                    worst = std::max(worst, scale * std::abs(psi[a][x]));
                  else
                    summed[index(e)][a][x] += psi[a][x];
                }
            }
        }
        for (int a = 0; a < 3; ++a) {
          const auto& d = delta[index(ep)][a * 3 + j];
          for (std::size_t x = 0; x < n; ++x) {
            // delta_perp column shifted to y: d(x - y).
            const auto mx = grid.signed_indices(x);
            const auto my = grid.signed_indices(y);
            const Complex target = d[grid.flat_signed(mx[0] - my[0], mx[1] - my[1], mx[2] - my[2])];
            worst = std::max(worst, scale * std::abs(summed[index(ep)][a][x] - target));
          }
        }
      }
  return worst;
}

namespace {

struct PhotonCombined {
  // per helicity and component: A and A_c with derivatives
  std::vector<detail::FieldDerivs> a, ac;
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

PhotonCombined photon_fields(const PhotonState& s, double t, bool second) {
  PhotonCombined c;
  c.a.resize(6);
  c.ac.resize(6);
  const PolarizationTable pol(s.layout());
  for (auto h : kHelicities)
    for (int comp = 0; comp < 3; ++comp) {
      const auto& e_comp = pol.at(h, comp);
      for (auto e : kFrequencySigns) {
        SpectralField f = s.at(e, h);
        for (std::size_t n = 0; n < f.size(); ++n) f.samples[n] *= e_comp[n];
        auto d = detail::field_derivs(f, s.disp(), t, second);
        const int slot = index(h) * 3 + comp;
        combine(c.a[slot], d, 1.0, second);
        combine(c.ac[slot], d, double(sign(e)), second);
      }
    }
  return c;
}

double photon_omega_max(const PhotonState& s) {
  double w = 0.0;
  for (auto e : kFrequencySigns)
    for (auto h : kHelicities) {
      const auto& c = s.at(e, h);
      for (std::size_t i = 0; i < c.size(); ++i)
        if (c.samples[i] != Complex(0.0)) w = std::max(w, c.layout.k(i).norm());
    }
  return w;
}

}  // namespace

FourCurrentSamples photon_current(const PhotonState& s, double t) {
  const auto c = photon_fields(s, t, false);
  FourCurrentSamples out;
  out.time_label = t;
  for (std::size_t m = 0; m < c.a.size(); ++m) {
    detail::accumulate_current(out.j0, c.a[m].f, c.a[m].dt, c.ac[m].f, c.ac[m].dt, 1.0);
    for (int a = 0; a < 3; ++a)
      detail::accumulate_current(out.j_vec[a], c.a[m].f, c.a[m].grad[a], c.ac[m].f, c.ac[m].grad[a], -1.0);
  }
  return out;
}

double photon_continuity_residual(const PhotonState& s, double t) {
  const auto c = photon_fields(s, t, true);
  std::vector<double> dj0, div, j0;
  for (std::size_t m = 0; m < c.a.size(); ++m) {
    detail::accumulate_current(dj0, c.a[m].f, c.a[m].dtt, c.ac[m].f, c.ac[m].dtt, 1.0);
    detail::accumulate_current(div, c.a[m].f, c.a[m].lap, c.ac[m].f, c.ac[m].lap, -1.0);
    detail::accumulate_current(j0, c.a[m].f, c.a[m].dt, c.ac[m].f, c.ac[m].dt, 1.0);
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < dj0.size(); ++i) worst = std::max(worst, std::abs(dj0[i] + div[i]));
  const double scale = detail::max_abs(j0) * photon_omega_max(s);
  return scale > 0.0 ? worst / scale : worst;
}

PhotonState landau_peierls(const PhotonState& s) {
  std::vector<SpectralField> f;
  for (auto e : kFrequencySigns)
    for (auto h : kHelicities) f.push_back(apply_power(s.disp(), -0.25, s.at(e, h)));
  return PhotonState(std::move(f));
}

Eigen::Matrix3cd two_photon_amplitude(const PhotonState& c1, const PhotonState& c2, bool symmetrize,
                                      const Vec3& x1, const Vec3& x2, Helicity l1, Helicity l2,
                                      double t) {
  const auto pos = FrequencySign::positive;
  const Vec3 pts[2] = {x1, x2};
  auto a1 = photon_wavefunction_at(c1, pos, l1, t, std::span<const Vec3>(pts, 1));
  auto b2 = photon_wavefunction_at(c2, pos, l2, t, std::span<const Vec3>(pts + 1, 1));
  Eigen::Matrix3cd out = a1[0] * b2[0].transpose();
  if (!symmetrize) return out;
  auto a2 = photon_wavefunction_at(c2, pos, l1, t, std::span<const Vec3>(pts, 1));
  auto b1 = photon_wavefunction_at(c1, pos, l2, t, std::span<const Vec3>(pts + 1, 1));
  out += a2[0] * b1[0].transpose();
  const double n1 = photon_dual_norm(c1);
  const double n2 = photon_dual_norm(c2);
  if (!(n1 > 0.0) || !(n2 > 0.0)) throw ZeroNorm("two_photon_amplitude: zero-norm factor");
  // <1~|2> overlap of the positive-frequency parts.
  Complex overlap = 0.0;
  for (auto h : kHelicities) {
    const auto& a = c1.at(pos, h).samples;
    const auto& b = c2.at(pos, h).samples;
    for (std::size_t i = 0; i < a.size(); ++i) overlap += dual_weight(c1.layout(), i) * std::conj(a[i]) * b[i];
  }
  return out / std::sqrt(2.0 * (1.0 + std::norm(overlap) / (n1 * n2)));
}

}  // namespace biortho
