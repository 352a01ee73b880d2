#pragma once

// Analytic test functions supported in {z > 0} with closed-form spherical
// means over spheres centred on the plane z = 0.

#include <string>
#include <variant>

#include "smrt/core.hpp"

namespace smrt {

/// f = x^2 y z^3 for z >= 0, zero below the plane.  Its spherical mean is
/// (1/8) x^2 y u^3 + (1/48) y u^5.
struct MonomialX2YZ3 {};

/// Indicator of the closed ball |P - center| <= radius.
struct UnitBall {
  Point3 center{0.0, 0.0, 2.0};
  double radius = 1.0;
};

class Phantom {
 public:
  using Kind = std::variant<MonomialX2YZ3, UnitBall>;

  static Phantom monomial();
  /// Throws DomainError unless the ball lies strictly above z = 0.
  static Phantom ball(Point3 center = {0.0, 0.0, 2.0}, double radius = 1.0);

  const Kind& kind() const noexcept { return kind_; }
  std::string name() const;

  /// Radius about the origin containing the support; +inf for the monomial,
  /// whose support is the whole upper half-space.
  double support_bound() const noexcept { return support_bound_; }

  double operator()(const Point3& p) const;

 private:
  Phantom(Kind kind, double bound) : kind_(kind), support_bound_(bound) {}

  Kind kind_;
  double support_bound_;
};

double eval_phantom(const Phantom& p, const Point3& pt);

/// Closed-form Mf(cx, cy, u).  Throws DomainError for u < 0.
double analytic_mean(const Phantom& p, double cx, double cy, double u);

/// Samples analytic_mean on a grid.
SphericalMeanField analytic_mean_field(const Phantom& p, const Axis& x_axis,
                                       const Axis& y_axis, const Axis& u_axis);

}  // namespace smrt
