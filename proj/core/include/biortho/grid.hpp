#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <vector>

#include "biortho/types.hpp"

namespace biortho {

// Cubic momentum grid with n points per axis and spacing dk. The conjugate
// position grid has dx = 2 pi / (n dk). Both grids use FFT index order per
// axis (index i holds signed value i for i < n/2, i - n otherwise) and are
// stored row-major with the z index fastest.
class GridSpec {
 public:
  GridSpec(int n_per_axis, double dk);

  int n() const { return n_; }
  double dk() const { return dk_; }
  double dx() const { return dx_; }
  double length() const { return n_ * dx_; }
  double dk3() const { return dk_ * dk_ * dk_; }
  double dx3() const { return dx_ * dx_ * dx_; }
  std::size_t size() const { return std::size_t(n_) * n_ * n_; }

  int signed_index(int i) const { return i < n_ / 2 ? i : i - n_; }
  int wrap(int m) const { return ((m % n_) + n_) % n_; }
  std::size_t flat(int ix, int iy, int iz) const {
    return (std::size_t(ix) * n_ + iy) * n_ + iz;
  }
  std::size_t flat_signed(int mx, int my, int mz) const {
    return flat(wrap(mx), wrap(my), wrap(mz));
  }
  std::array<int, 3> unflatten(std::size_t i) const;
  std::array<int, 3> signed_indices(std::size_t i) const;

  Vec3 k_at(std::size_t i) const;
  Vec3 x_at(std::size_t i) const;

  bool operator==(const GridSpec& o) const { return n_ == o.n_ && dk_ == o.dk_; }

 private:
  int n_;
  double dk_;
  double dx_;
};

struct RadialNode {
  double k;
  double weight;
};

// Product rule over spherical coordinates in k-space: radial nodes times
// Gauss-Legendre in cos(theta) times a uniform azimuthal rule. Nodes are
// ordered radial slowest, then theta, then phi.
class SphericalQuadrature {
 public:
  SphericalQuadrature(std::vector<RadialNode> radial, int n_theta, int n_phi,
                      int radial_degree);

  // Gauss-Legendre radial nodes on [k_min, k_max].
  static SphericalQuadrature gauss_legendre(double k_min, double k_max, int n_radial,
                                            int n_theta, int n_phi);

  const std::vector<RadialNode>& radial_nodes() const { return radial_; }
  const std::vector<double>& cos_theta() const { return cos_theta_; }
  const std::vector<double>& theta_weights() const { return theta_w_; }
  int n_radial() const { return int(radial_.size()); }
  int n_theta() const { return int(cos_theta_.size()); }
  int n_phi() const { return n_phi_; }
  double phi(int j) const;
  double phi_weight() const;
  std::size_t size() const { return radial_.size() * cos_theta_.size() * n_phi_; }

  // Highest polynomial degree in k integrated exactly by the radial rule.
  int exact_degree() const { return degree_; }
  double k_min() const { return k_lo_; }
  double k_max() const { return k_hi_; }

  // Largest error over rescaled monomials up to exact_degree(); ~1e-14 when
  // the declared degree is honest.
  double radial_self_test() const;

  bool operator==(const SphericalQuadrature& o) const;

 private:
  std::vector<RadialNode> radial_;
  std::vector<double> cos_theta_;
  std::vector<double> theta_w_;
  int n_phi_;
  int degree_;
  double k_lo_;
  double k_hi_;
};

// Gauss-Legendre nodes and weights on [a, b].
std::vector<RadialNode> gauss_legendre_nodes(int n, double a, double b);

// Shared immutable node table for a grid or a spherical quadrature: the
// momentum vector of each sample and its integration measure (dk^3 for
// grids, k^2 dk dcos dphi weights for quadratures).
class MomentumLayout {
 public:
  explicit MomentumLayout(const GridSpec& grid);
  explicit MomentumLayout(const SphericalQuadrature& quad);

  std::size_t size() const { return impl_->k.size(); }
  const Vec3& k(std::size_t i) const { return impl_->k[i]; }
  double measure(std::size_t i) const { return impl_->measure[i]; }
  const std::vector<Vec3>& momenta() const { return impl_->k; }

  bool is_grid() const { return impl_->grid != nullptr; }
  const GridSpec& grid() const;
  const SphericalQuadrature& quadrature() const;

  bool operator==(const MomentumLayout& o) const;

 private:
  struct Impl {
    std::unique_ptr<GridSpec> grid;
    std::unique_ptr<SphericalQuadrature> quad;
    std::vector<Vec3> k;
    std::vector<double> measure;
  };
  std::shared_ptr<const Impl> impl_;
};

}  // namespace biortho
