#include "smrt/forward.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

namespace smrt {

GaussLegendre gauss_legendre(int order) {
  if (order < 1) throw DomainError("Gauss-Legendre order must be >= 1");
  const auto n = static_cast<std::size_t>(order);
  GaussLegendre gl{std::vector<double>(n), std::vector<double>(n)};
  // Newton on P_n from the Tricomi initial guess; symmetric pairs.
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double kk = static_cast<double>(k);
        const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
        p0 = p1;
        p1 = p2;
      }
      // P_n'(x) = n (x P_n - P_{n-1}) / (x^2 - 1)
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) <= 1e-16 * std::max(1.0, std::abs(x))) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    gl.nodes[i] = -x;
    gl.nodes[n - 1 - i] = x;
    gl.weights[i] = w;
    gl.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) gl.nodes[n / 2] = 0.0;
  return gl;
}

SphereQuadratureRule::SphereQuadratureRule(int polar_order, int azimuth_count)
    : polar_order_(polar_order), azimuth_count_(azimuth_count) {
  if (polar_order < 2) throw DomainError("polar_order must be >= 2");
  if (azimuth_count < 4) throw DomainError("azimuth_count must be >= 4");

  // Every sphere is centred on the plane z = 0, so the plane is always the
  // equator cos(theta) = 0.  Phantoms supported in {z > 0} are non-smooth
  // there; a separate Gauss-Legendre rule on each hemisphere keeps the
  // polar quadrature spectrally accurate for them.
  const GaussLegendre gl = gauss_legendre(polar_order);
  std::vector<double> cos_nodes;
  std::vector<double> cos_weights;
  for (double sign : {-1.0, 1.0})
    for (std::size_t a = 0; a < gl.nodes.size(); ++a) {
      const std::size_t q = sign < 0 ? gl.nodes.size() - 1 - a : a;
      cos_nodes.push_back(sign * 0.5 * (gl.nodes[q] + 1.0));
      cos_weights.push_back(0.5 * gl.weights[q]);
    }

  const double dphi = 2.0 * std::numbers::pi / azimuth_count;
  directions_.reserve(cos_nodes.size() * static_cast<std::size_t>(azimuth_count));
  weights_.reserve(directions_.capacity());
  for (std::size_t a = 0; a < cos_nodes.size(); ++a) {
    const double c = cos_nodes[a];
    const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
    for (int b = 0; b < azimuth_count; ++b) {
      const double phi = dphi * b;
      directions_.push_back({s * std::cos(phi), s * std::sin(phi), c});
      weights_.push_back(cos_weights[a] * dphi);
    }
  }
}

double spherical_mean(const ScalarField3& f, double cx, double cy, double u,
                      const SphereQuadratureRule& rule) {
  if (!(u >= 0.0)) throw DomainError("spherical mean radius must be >= 0");
  auto checked = [&](const Point3& p) {
    const double v = f(p);
    if (!std::isfinite(v)) {
      std::ostringstream os;
      os.precision(17);
      os << "non-finite sample " << v << " at (" << p.x << ", " << p.y << ", "
         << p.z << ")";
      throw NumericError(os.str());
    }
    return v;
  };
  if (u == 0.0) return checked(Point3{cx, cy, 0.0});

  double sum = 0.0;
  for (std::size_t j = 0; j < rule.size(); ++j) {
    const Point3& w = rule.direction(j);
    sum += rule.weight(j) * checked(Point3{cx + u * w.x, cy + u * w.y, u * w.z});
  }
  return sum / (4.0 * std::numbers::pi);
}

SphericalMeanField sample_mean_field(const ScalarField3& f, const Axis& x_axis,
                                     const Axis& y_axis, const Axis& u_axis,
                                     const SphereQuadratureRule& rule,
                                     unsigned workers) {
  if (u_axis.start() < 0.0)
    throw ContractError("sample_mean_field: radial axis must start at u >= 0");
  SphericalMeanField out(x_axis, y_axis, u_axis);
  detail::parallel_for(x_axis.count(), workers, [&](std::size_t k) {
    for (std::size_t l = 0; l < y_axis.count(); ++l)
      for (std::size_t m = 0; m < u_axis.count(); ++m)
        out(k, l, m) = spherical_mean(f, x_axis[k], y_axis[l], u_axis[m], rule);
  });
  return out;
}

namespace detail {

void parallel_for(std::size_t count, unsigned workers,
                  const std::function<void(std::size_t)>& body) {
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(
      std::min<std::size_t>(workers, std::max<std::size_t>(count, 1)));
  if (workers <= 1) {
    for (std::size_t k = 0; k < count; ++k) body(k);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t k = next++; k < count; k = next++) {
        try {
          body(k);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = count;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace detail

}  // namespace smrt
