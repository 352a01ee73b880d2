#pragma once

// Numeric spherical means by product quadrature on the unit sphere:
// Gauss-Legendre in cos(theta) on each hemisphere (split at the detector
// plane) times the uniform rule in phi.

#include <functional>
#include <vector>

#include "smrt/core.hpp"

namespace smrt {

using ScalarField3 = std::function<double(const Point3&)>;

/// Gauss-Legendre nodes and weights on [-1, 1], ascending.
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussLegendre gauss_legendre(int order);

class SphereQuadratureRule {
 public:
  /// polar_order Gauss-Legendre nodes on each of cos(theta) in [-1, 0] and
  /// [0, 1]; azimuth_count uniform nodes in phi.  polar_order >= 2 and
  /// azimuth_count >= 4, otherwise DomainError.
  SphereQuadratureRule(int polar_order, int azimuth_count);

  int polar_order() const noexcept { return polar_order_; }
  int azimuth_count() const noexcept { return azimuth_count_; }
  std::size_t size() const noexcept { return weights_.size(); }

  /// Unit direction and weight of node j.  Weights sum to 4*pi.
  const Point3& direction(std::size_t j) const { return directions_[j]; }
  double weight(std::size_t j) const { return weights_[j]; }
  const std::vector<double>& weights() const noexcept { return weights_; }

 private:
  int polar_order_;
  int azimuth_count_;
  std::vector<Point3> directions_;
  std::vector<double> weights_;
};

/// (1/4pi) sum_j w_j f((cx,cy,0) + u*omega_j).  u == 0 evaluates f at the
/// centre.  A non-finite sample raises NumericError naming the node.
double spherical_mean(const ScalarField3& f, double cx, double cy, double u,
                      const SphereQuadratureRule& rule);

/// values[k,l,m] = spherical_mean(f, x_k, y_l, u_m).  Grid points are
/// distributed over `workers` threads (0 picks the hardware concurrency);
/// the result does not depend on the worker count.
SphericalMeanField sample_mean_field(const ScalarField3& f, const Axis& x_axis,
                                     const Axis& y_axis, const Axis& u_axis,
                                     const SphereQuadratureRule& rule,
                                     unsigned workers = 1);

namespace detail {
/// Runs body(k) for k in [0, count) on up to `workers` threads.
void parallel_for(std::size_t count, unsigned workers,
                  const std::function<void(std::size_t)>& body);
}  // namespace detail

}  // namespace smrt
