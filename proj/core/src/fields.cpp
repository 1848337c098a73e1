#include "fields.hpp"

#include "biortho/errors.hpp"

#include <algorithm>
#include <cmath>

namespace biortho::detail {

std::vector<Complex> synth_mult(const SpectralField& f, const Dispersion& disp, double t,
                                Weight weight,
                                const std::function<Complex(const Vec3&, double)>& mult) {
  const GridSpec& grid = f.layout.grid();
  const double e = sign(f.epsilon);
  const double dt = t - f.time_label;
  std::vector<Complex> a(f.size(), Complex(0.0));
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f.samples[i] == Complex(0.0)) continue;
    const Vec3& k = f.layout.k(i);
    if (disp.singular(k)) throw SingularMode("nonzero sample on the massless k = 0 mode");
    const double w = disp.omega(k);
    const double wt = weight == Weight::covariant ? covariant_weight(disp, f.layout, i)
                                                  : dual_weight(f.layout, i);
    Complex v = wt * f.samples[i] * std::polar(1.0, -e * w * dt);
    if (mult) v *= mult(k, w);
    a[i] = v;
  }
  return to_position(grid, std::move(a), f.epsilon);
}

FieldDerivs field_derivs(const SpectralField& f, const Dispersion& disp, double t, bool second,
                         const std::function<Complex(const Vec3&, double)>& mult) {
  const double e = sign(f.epsilon);
  const Complex i(0.0, 1.0);
  auto with = [&](auto fn) {
    return synth_mult(f, disp, t, Weight::covariant, [&](const Vec3& k, double w) {
      Complex m = fn(k, w);
      if (mult) m *= mult(k, w);
      return m;
    });
  };
  FieldDerivs d;
  d.f = with([](const Vec3&, double) { return Complex(1.0); });
  d.dt = with([&](const Vec3&, double w) { return -i * e * w; });
  for (int a = 0; a < 3; ++a)
    d.grad[a] = with([&](const Vec3& k, double) { return i * e * k[a]; });
  if (second) {
    d.dtt = with([](const Vec3&, double w) { return Complex(-w * w); });
    d.lap = with([](const Vec3& k, double) { return Complex(-k.squaredNorm()); });
  }
  return d;
}

void add_into(std::vector<Complex>& acc, const std::vector<Complex>& v, double sign) {
  if (acc.empty()) acc.assign(v.size(), Complex(0.0));
  for (std::size_t i = 0; i < v.size(); ++i) acc[i] += sign * v[i];
}

void accumulate_current(std::vector<double>& out, const std::vector<Complex>& a,
                        const std::vector<Complex>& da, const std::vector<Complex>& b,
                        const std::vector<Complex>& db, double sign) {
  if (out.empty()) out.assign(a.size(), 0.0);
  const Complex i(0.0, 1.0);
  for (std::size_t n = 0; n < a.size(); ++n)
    out[n] += sign * std::real(i * (std::conj(a[n]) * db[n] - std::conj(da[n]) * b[n]));
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace biortho::detail
