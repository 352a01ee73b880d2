#include "smrt/phantoms.hpp"

#include <cmath>
#include <limits>

namespace smrt {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Fraction of the sphere of radius u whose centre is at distance d from the
// centre of a ball of radius r that lies inside the ball.  At the tangency
// radii u = d - r and u = d + r the cap formula itself yields 0.
double cap_fraction(double d, double u, double r) {
  if (u + d <= r) return 1.0;
  if (u < d - r || u > d + r) return 0.0;
  if (d == 0.0) return u <= r ? 1.0 : 0.0;
  return (r * r - (d - u) * (d - u)) / (4.0 * u * d);
}

}  // namespace

Phantom Phantom::monomial() {
  return Phantom(MonomialX2YZ3{}, std::numeric_limits<double>::infinity());
}

Phantom Phantom::ball(Point3 center, double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius))
    throw DomainError("ball radius must be positive and finite");
  if (!std::isfinite(center.x) || !std::isfinite(center.y) ||
      !std::isfinite(center.z))
    throw DomainError("ball centre must be finite");
  if (!(center.z - radius > 0.0))
    throw DomainError("ball must lie strictly above the plane z = 0");
  const double dist = std::sqrt(center.x * center.x + center.y * center.y +
                                center.z * center.z);
  return Phantom(UnitBall{center, radius}, dist + radius);
}

std::string Phantom::name() const {
  return std::holds_alternative<MonomialX2YZ3>(kind_) ? "monomial" : "ball";
}

double Phantom::operator()(const Point3& p) const {
  return std::visit(
      overloaded{
          [&](const MonomialX2YZ3&) {
            return p.z >= 0.0 ? p.x * p.x * p.y * p.z * p.z * p.z : 0.0;
          },
          [&](const UnitBall& b) {
            const double dx = p.x - b.center.x;
            const double dy = p.y - b.center.y;
            const double dz = p.z - b.center.z;
            return dx * dx + dy * dy + dz * dz <= b.radius * b.radius ? 1.0
                                                                      : 0.0;
          }},
      kind_);
}

double eval_phantom(const Phantom& p, const Point3& pt) { return p(pt); }

double analytic_mean(const Phantom& p, double cx, double cy, double u) {
  if (!(u >= 0.0)) throw DomainError("spherical mean radius must be >= 0");
  if (u == 0.0) return p(Point3{cx, cy, 0.0});
  return std::visit(
      overloaded{
          [&](const MonomialX2YZ3&) {
            const double u3 = u * u * u;
            return cx * cx * cy * u3 / 8.0 + cy * u3 * u * u / 48.0;
          },
          [&](const UnitBall& b) {
            const double dx = cx - b.center.x;
            const double dy = cy - b.center.y;
            const double d = std::sqrt(dx * dx + dy * dy + b.center.z * b.center.z);
            return cap_fraction(d, u, b.radius);
          }},
      p.kind());
}

SphericalMeanField analytic_mean_field(const Phantom& p, const Axis& x_axis,
                                       const Axis& y_axis, const Axis& u_axis) {
  SphericalMeanField out(x_axis, y_axis, u_axis);
  for (std::size_t k = 0; k < x_axis.count(); ++k)
    for (std::size_t l = 0; l < y_axis.count(); ++l)
      for (std::size_t m = 0; m < u_axis.count(); ++m)
        out(k, l, m) = analytic_mean(p, x_axis[k], y_axis[l], u_axis[m]);
  return out;
}

}  // namespace smrt
