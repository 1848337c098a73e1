#pragma once

#include <functional>
#include <vector>

#include "biortho/spectral.hpp"

namespace biortho::detail {

enum class Weight { covariant, dual };

// sum_k weight(k) mult(k, omega) c(k) exp(-i eps (omega (t - tau) - k.x)) on the grid.
std::vector<Complex> synth_mult(const SpectralField& f, const Dispersion& disp, double t,
                                Weight weight,
                                const std::function<Complex(const Vec3&, double)>& mult);

// Field, time derivative, gradient and (optionally) second derivatives.
struct FieldDerivs {
  std::vector<Complex> f;
  std::vector<Complex> dt;
  std::array<std::vector<Complex>, 3> grad;
  std::vector<Complex> dtt;
  std::vector<Complex> lap;
};

FieldDerivs field_derivs(const SpectralField& f, const Dispersion& disp, double t, bool second,
                         const std::function<Complex(const Vec3&, double)>& mult = {});

void add_into(std::vector<Complex>& acc, const std::vector<Complex>& v, double sign = 1.0);

// Re[i (conj(a) db - conj(da) b)]
void accumulate_current(std::vector<double>& out, const std::vector<Complex>& a,
                        const std::vector<Complex>& da, const std::vector<Complex>& b,
                        const std::vector<Complex>& db, double sign);

double max_abs(const std::vector<double>& v);

}  // namespace biortho::detail
