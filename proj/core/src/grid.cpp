#include "biortho/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <gsl/gsl_integration.h>

#include "biortho/errors.hpp"

namespace biortho {

GridSpec::GridSpec(int n_per_axis, double dk) : n_(n_per_axis), dk_(dk) {
  if (n_ < 4 || n_ % 2 != 0)
    throw InvalidArgument("grid: n_per_axis must be even and >= 4, got " + std::to_string(n_));
  if (!(dk_ > 0.0) || !std::isfinite(dk_))
    throw InvalidArgument("grid: dk must be positive and finite");
  dx_ = 2.0 * kPi / (n_ * dk_);
}

std::array<int, 3> GridSpec::unflatten(std::size_t i) const {
  const int iz = int(i % n_);
  const int iy = int((i / n_) % n_);
  const int ix = int(i / (std::size_t(n_) * n_));
  return {ix, iy, iz};
}

std::array<int, 3> GridSpec::signed_indices(std::size_t i) const {
  auto u = unflatten(i);
  return {signed_index(u[0]), signed_index(u[1]), signed_index(u[2])};
}

Vec3 GridSpec::k_at(std::size_t i) const {
  auto m = signed_indices(i);
  return Vec3(m[0] * dk_, m[1] * dk_, m[2] * dk_);
}

Vec3 GridSpec::x_at(std::size_t i) const {
  auto m = signed_indices(i);
  return Vec3(m[0] * dx_, m[1] * dx_, m[2] * dx_);
}

std::vector<RadialNode> gauss_legendre_nodes(int n, double a, double b) {
  if (n < 1) throw InvalidArgument("gauss_legendre_nodes: n must be positive");
  if (!(b > a)) throw InvalidArgument("gauss_legendre_nodes: empty interval");
  gsl_integration_glfixed_table* table = gsl_integration_glfixed_table_alloc(std::size_t(n));
  if (!table) throw Error("gauss_legendre_nodes: table allocation failed");
  std::vector<RadialNode> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    gsl_integration_glfixed_point(a, b, std::size_t(i), &out[i].k, &out[i].weight, table);
  gsl_integration_glfixed_table_free(table);
  std::sort(out.begin(), out.end(), [](const RadialNode& l, const RadialNode& r) { return l.k < r.k; });
  return out;
}

SphericalQuadrature::SphericalQuadrature(std::vector<RadialNode> radial, int n_theta, int n_phi,
                                         int radial_degree)
    : radial_(std::move(radial)), n_phi_(n_phi), degree_(radial_degree) {
  if (radial_.empty()) throw InvalidArgument("quadrature: no radial nodes");
  if (n_theta < 1 || n_phi < 1) throw InvalidArgument("quadrature: angular node counts must be positive");
  for (const auto& r : radial_)
    if (!(r.k > 0.0)) throw InvalidArgument("quadrature: radial nodes must have k > 0");
  auto th = gauss_legendre_nodes(n_theta, -1.0, 1.0);
  for (const auto& t : th) {
    cos_theta_.push_back(t.k);
    theta_w_.push_back(t.weight);
  }
  k_lo_ = radial_.front().k;
  k_hi_ = radial_.back().k;
  for (const auto& r : radial_) {
    k_lo_ = std::min(k_lo_, r.k);
    k_hi_ = std::max(k_hi_, r.k);
  }
}

SphericalQuadrature SphericalQuadrature::gauss_legendre(double k_min, double k_max, int n_radial,
                                                        int n_theta, int n_phi) {
  if (!(k_min > 0.0)) throw InvalidArgument("quadrature: k_min must be positive");
  SphericalQuadrature q(gauss_legendre_nodes(n_radial, k_min, k_max), n_theta, n_phi,
                        2 * n_radial - 1);
  q.k_lo_ = k_min;
  q.k_hi_ = k_max;
  return q;
}

double SphericalQuadrature::phi(int j) const { return 2.0 * kPi * j / n_phi_; }
double SphericalQuadrature::phi_weight() const { return 2.0 * kPi / n_phi_; }

double SphericalQuadrature::radial_self_test() const {
  const double mid = 0.5 * (k_lo_ + k_hi_);
  const double half = 0.5 * (k_hi_ - k_lo_);
  double worst = 0.0;
  for (int p = 0; p <= degree_; ++p) {
    double sum = 0.0;
    for (const auto& r : radial_) sum += r.weight * std::pow((r.k - mid) / half, p);
    const double exact = (p % 2 == 0) ? 2.0 * half / (p + 1) : 0.0;
    worst = std::max(worst, std::abs(sum - exact) / (2.0 * half));
  }
  return worst;
}

bool SphericalQuadrature::operator==(const SphericalQuadrature& o) const {
  if (radial_.size() != o.radial_.size() || cos_theta_.size() != o.cos_theta_.size() ||
      n_phi_ != o.n_phi_)
    return false;
  for (std::size_t i = 0; i < radial_.size(); ++i)
    if (radial_[i].k != o.radial_[i].k || radial_[i].weight != o.radial_[i].weight) return false;
  return true;
}

MomentumLayout::MomentumLayout(const GridSpec& grid) {
  auto impl = std::make_shared<Impl>();
  impl->grid = std::make_unique<GridSpec>(grid);
  const std::size_t n = grid.size();
  impl->k.resize(n);
  impl->measure.assign(n, grid.dk3());
  for (std::size_t i = 0; i < n; ++i) impl->k[i] = grid.k_at(i);
  impl_ = std::move(impl);
}

MomentumLayout::MomentumLayout(const SphericalQuadrature& quad) {
  auto impl = std::make_shared<Impl>();
  impl->quad = std::make_unique<SphericalQuadrature>(quad);
  impl->k.reserve(quad.size());
  impl->measure.reserve(quad.size());
  for (const auto& r : quad.radial_nodes()) {
    for (int it = 0; it < quad.n_theta(); ++it) {
      const double c = quad.cos_theta()[it];
      const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
      for (int ip = 0; ip < quad.n_phi(); ++ip) {
        const double ph = quad.phi(ip);
        impl->k.emplace_back(r.k * s * std::cos(ph), r.k * s * std::sin(ph), r.k * c);
        impl->measure.push_back(r.weight * r.k * r.k * quad.theta_weights()[it] * quad.phi_weight());
      }
    }
  }
  impl_ = std::move(impl);
}

const GridSpec& MomentumLayout::grid() const {
  if (!impl_->grid) throw InvalidArgument("layout is a spherical quadrature, not a grid");
  return *impl_->grid;
}

const SphericalQuadrature& MomentumLayout::quadrature() const {
  if (!impl_->quad) throw InvalidArgument("layout is a grid, not a spherical quadrature");
  return *impl_->quad;
}

bool MomentumLayout::operator==(const MomentumLayout& o) const {
  if (impl_ == o.impl_) return true;
  if (is_grid() != o.is_grid()) return false;
  return is_grid() ? *impl_->grid == *o.impl_->grid : *impl_->quad == *o.impl_->quad;
}

}  // namespace biortho
