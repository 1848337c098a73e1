#include "biortho/spectral.hpp"

#include <cmath>
#include <string>

#include "biortho/errors.hpp"
#include "fft.hpp"

namespace biortho {

Dispersion::Dispersion(double mass) : mass_(mass) {
  if (!(mass >= 0.0) || !std::isfinite(mass))
    throw InvalidArgument("dispersion: mass must be finite and nonnegative");
}

double Dispersion::omega(double k_abs) const { return std::sqrt(k_abs * k_abs + mass_ * mass_); }

double omega(const Dispersion& disp, const Vec3& k) { return disp.omega(k); }

double covariant_weight(const Dispersion& disp, const GridSpec& grid, const Vec3& k) {
  if (disp.singular(k)) throw SingularMode("covariant_weight: massless k = 0 mode");
  return grid.dk3() / (kTwoPi3 * 2.0 * disp.omega(k));
}

double covariant_weight(const Dispersion& disp, const MomentumLayout& layout, std::size_t i) {
  const Vec3& k = layout.k(i);
  if (disp.singular(k)) throw SingularMode("covariant_weight: massless k = 0 mode");
  return layout.measure(i) / (kTwoPi3 * 2.0 * disp.omega(k));
}

double dual_weight(const MomentumLayout& layout, std::size_t i) {
  return layout.measure(i) / (kTwoPi3 * 2.0);
}

SpectralField::SpectralField(MomentumLayout l, FrequencySign eps, std::optional<Helicity> h,
                             double t)
    : layout(std::move(l)), samples(layout.size(), Complex(0.0)), epsilon(eps), helicity(h),
      time_label(t) {}

SpectralField::SpectralField(MomentumLayout l, std::vector<Complex> s, FrequencySign eps,
                             std::optional<Helicity> h, double t)
    : layout(std::move(l)), samples(std::move(s)), epsilon(eps), helicity(h), time_label(t) {
  if (samples.size() != layout.size())
    throw InvalidArgument("SpectralField: " + std::to_string(samples.size()) +
                          " samples for a layout of " + std::to_string(layout.size()));
}

std::size_t enforce_zero_mode(SpectralField& f, const Dispersion& disp) {
  if (disp.mass() > 0.0) return 0;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (disp.singular(f.layout.k(i))) {
      if (f.samples[i] != Complex(0.0)) ++hits;
      f.samples[i] = 0.0;
    }
  }
  return hits;
}

SpectralField apply_power(const Dispersion& disp, double s, const SpectralField& f) {
  SpectralField out = f;
  const double m2 = disp.mass() * disp.mass();
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double d = f.layout.k(i).squaredNorm() + m2;
    if (d == 0.0) {
      if (s < 0.0 && f.samples[i] != Complex(0.0))
        throw SingularMode("apply_power: negative power on a nonzero massless k = 0 sample");
      if (s != 0.0) out.samples[i] = 0.0;
      continue;
    }
    if (s != 0.0) out.samples[i] *= std::pow(d, s);
  }
  return out;
}

SpectralField evolve(const SpectralField& f, const Dispersion& disp, double t) {
  SpectralField out = f;
  const double e = sign(f.epsilon);
  const double dt = t - f.time_label;
  for (std::size_t i = 0; i < f.size(); ++i)
    out.samples[i] *= std::polar(1.0, -e * disp.omega(f.layout.k(i)) * dt);
  out.time_label = t;
  return out;
}

namespace {

void check_singular(const SpectralField& f, const Dispersion& disp, std::size_t i) {
  if (f.samples[i] != Complex(0.0))
    throw SingularMode("synthesize: nonzero sample on the massless k = 0 mode");
  (void)disp;
}

}  // namespace

std::vector<Complex> to_position(const GridSpec& grid, std::vector<Complex> a, FrequencySign eps) {
  detail::fft3(a, grid.n(), sign(eps));
  return a;
}

std::vector<Complex> to_momentum(const GridSpec& grid, std::vector<Complex> b, FrequencySign eps) {
  detail::fft3(b, grid.n(), -sign(eps));
  return b;
}

std::vector<Complex> synthesize(const SpectralField& f, const Dispersion& disp, double t) {
  const GridSpec& grid = f.layout.grid();
  const double e = sign(f.epsilon);
  const double dt = t - f.time_label;
  std::vector<Complex> a(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Vec3& k = f.layout.k(i);
    if (disp.singular(k)) {
      check_singular(f, disp, i);
      a[i] = 0.0;
      continue;
    }
    const double w = covariant_weight(disp, f.layout, i);
    a[i] = w * f.samples[i] * std::polar(1.0, -e * disp.omega(k) * dt);
  }
  return to_position(grid, std::move(a), f.epsilon);
}

std::vector<Complex> synthesize_at(const SpectralField& f, const Dispersion& disp, double t,
                                   std::span<const Vec3> points) {
  const double e = sign(f.epsilon);
  const double dt = t - f.time_label;
  std::vector<Complex> a(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Vec3& k = f.layout.k(i);
    if (disp.singular(k)) {
      check_singular(f, disp, i);
      continue;
    }
    a[i] = covariant_weight(disp, f.layout, i) * f.samples[i] *
           std::polar(1.0, -e * disp.omega(k) * dt);
  }
  std::vector<Complex> out(points.size());
  for (std::size_t p = 0; p < points.size(); ++p) {
    Complex sum = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
      if (a[i] != Complex(0.0)) sum += a[i] * std::polar(1.0, e * f.layout.k(i).dot(points[p]));
    out[p] = sum;
  }
  return out;
}

SpectralField analyze(std::span<const Complex> samples, FrequencySign eps, const Dispersion& disp,
                      const GridSpec& grid, double t) {
  if (samples.size() != grid.size())
    throw InvalidArgument("analyze: " + std::to_string(samples.size()) +
                          " position samples for a grid of " + std::to_string(grid.size()));
  MomentumLayout layout(grid);
  auto g = to_momentum(grid, std::vector<Complex>(samples.begin(), samples.end()), eps);
  const double inv_n3 = 1.0 / double(grid.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Vec3& k = layout.k(i);
    if (disp.singular(k)) {
      g[i] = 0.0;
      continue;
    }
    g[i] *= inv_n3 / covariant_weight(disp, layout, i);
  }
  return SpectralField(std::move(layout), std::move(g), eps, std::nullopt, t);
}

namespace {

bool edge_layer(const GridSpec& grid, std::size_t i) {
  const auto m = grid.signed_indices(i);
  const int lim = grid.n() / 2 - 1;
  for (int a = 0; a < 3; ++a)
    if (m[a] >= lim || m[a] <= -lim) return true;
  return false;
}

// A(y) = N^-3 sum_k c(k) exp(i eps k.y), so that c(k) = sum_y A(y) exp(-i eps k.y).
std::vector<Complex> conjugate_samples(const GridSpec& grid, std::span<const Complex> c,
                                       FrequencySign eps) {
  auto a = to_position(grid, std::vector<Complex>(c.begin(), c.end()), eps);
  const double inv = 1.0 / double(grid.size());
  for (auto& v : a) v *= inv;
  return a;
}

double edge_fraction_of(const GridSpec& grid, const std::vector<Complex>& a) {
  double edge = 0.0, total = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double p = std::norm(a[i]);
    total += p;
    if (edge_layer(grid, i)) edge += p;
  }
  return total > 0.0 ? edge / total : 0.0;
}

}  // namespace

double conjugate_edge_fraction(const GridSpec& grid, std::span<const Complex> c) {
  if (c.size() != grid.size()) throw InvalidArgument("conjugate_edge_fraction: size mismatch");
  return edge_fraction_of(grid, conjugate_samples(grid, c, FrequencySign::positive));
}

std::array<std::vector<Complex>, 3> k_gradient(const GridSpec& grid, std::span<const Complex> c,
                                               FrequencySign eps, double edge_tol) {
  if (c.size() != grid.size()) throw InvalidArgument("k_gradient: size mismatch");
  // With c = sum_y A(y) exp(-i k.y), i grad_k c = sum_y y A(y) exp(-i k.y).
  const auto a = conjugate_samples(grid, c, FrequencySign::positive);
  const double edge = edge_fraction_of(grid, a);
  if (edge > edge_tol)
    throw BoundaryWrap("k_gradient: amplitude not negligible at the grid edge (fraction " +
                       std::to_string(edge) + ")");
  const double e = sign(eps);
  std::array<std::vector<Complex>, 3> out;
  for (int axis = 0; axis < 3; ++axis) {
    std::vector<Complex> b(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) b[i] = e * grid.x_at(i)[axis] * a[i];
    out[axis] = to_momentum(grid, std::move(b), FrequencySign::positive);
  }
  return out;
}

double log_log_tail_slope(const SpectralField& f, const Dispersion& disp, double t,
                          const Vec3& direction, double r_lo, double r_hi, int samples) {
  if (!(r_lo > 0.0) || !(r_hi > r_lo) || samples < 2)
    throw InvalidArgument("log_log_tail_slope: need 0 < r_lo < r_hi and at least two samples");
  const Vec3 dir = direction.normalized();
  std::vector<Vec3> pts(static_cast<std::size_t>(samples));
  std::vector<double> lx(pts.size()), ly(pts.size());
  for (int i = 0; i < samples; ++i) {
    const double r = r_lo * std::pow(r_hi / r_lo, double(i) / (samples - 1));
    pts[i] = r * dir;
    lx[i] = std::log(r);
  }
  const auto phi = synthesize_at(f, disp, t, pts);
  for (std::size_t i = 0; i < phi.size(); ++i) ly[i] = std::log(std::abs(phi[i]));
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= double(lx.size());
  my /= double(ly.size());
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  return sxy / sxx;
}

SpectralField zero_pad(const SpectralField& f, const GridSpec& target) {
  const GridSpec& src = f.layout.grid();
  if (target.dk() != src.dk() || target.n() < src.n())
    throw GridMismatch("zero_pad: target must share dk and be at least as large");
  SpectralField out(MomentumLayout(target), f.epsilon, f.helicity, f.time_label);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto m = src.signed_indices(i);
    out.samples[target.flat_signed(m[0], m[1], m[2])] = f.samples[i];
  }
  return out;
}

}  // namespace biortho
