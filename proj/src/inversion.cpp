#include "smrt/inversion.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "smrt/forward.hpp"

namespace smrt {

namespace {

constexpr double kNodeTolerance = 1e-9;

bool starts_at_zero(const Axis& u_axis) {
  return std::abs(u_axis.start()) <= kNodeTolerance * u_axis.step();
}

std::size_t z_node_index(const Axis& u_axis, double z) {
  if (!(z > 0.0)) throw DomainError("reconstruction height z must be > 0");
  const auto m = u_axis.find_node(z, kNodeTolerance);
  if (!m) {
    std::ostringstream os;
    os.precision(17);
    os << "z = " << z << " is not a node of the radial axis";
    throw ContractError(os.str());
  }
  return *m;
}

// Level-n value at layer-0 index (k, l) and radial node mz.
double assemble(const LaplacianStack& stack, const QTable& table,
                std::size_t k, std::size_t l, std::size_t mz) {
  const int n = table.level();
  const SphericalMeanField& base = stack.layers.front();
  double sum = center_weight(n) * base(k, l, mz);
  for (int i = 0; i <= n; ++i) {
    const auto shift = static_cast<std::size_t>(i);
    const SphericalMeanField& layer = stack.layers[shift];
    sum += radial_term_at(layer.profile(k - shift, l - shift), layer.u_axis(),
                          table, i, mz);
  }
  return 2.0 * sum;
}

std::string describe_axis(const Axis& a) {
  std::ostringstream os;
  os << '(' << format_real(a.start()) << ',' << format_real(a.step()) << ','
     << a.count() << ')';
  return os.str();
}

// First field index of `out` along `in`, or an issue.
std::optional<std::size_t> align_output(const Axis& in, const Axis& out,
                                        std::size_t halo, const char* name,
                                        std::vector<std::string>& issues) {
  if (std::abs(out.step() - in.step()) > kNodeTolerance * in.step()) {
    issues.push_back(std::string(name) + " output step " +
                     format_real(out.step()) + " differs from field step " +
                     format_real(in.step()));
    return std::nullopt;
  }
  const auto first = in.find_node(out.start(), kNodeTolerance);
  if (!first) {
    issues.push_back(std::string(name) + " output start " +
                     format_real(out.start()) + " is not a field node");
    return std::nullopt;
  }
  if (*first < halo || *first + out.count() - 1 + halo >= in.count()) {
    issues.push_back(std::string(name) + " output axis " + describe_axis(out) +
                     " lacks a halo of " + std::to_string(halo) +
                     " nodes inside field axis " + describe_axis(in));
    return std::nullopt;
  }
  return first;
}

struct Plan {
  std::size_t k0, l0;
  Axis x_out, y_out, z_out;
  std::vector<std::size_t> z_nodes;
};

Plan make_plan(const ReconstructionConfig& config,
               const SphericalMeanField& field, const QTable& table) {
  std::vector<std::string> issues;
  const Axis& u = field.u_axis();
  const int n = config.n;

  if (n != table.level())
    issues.push_back("config level n=" + std::to_string(n) +
                     " does not match Q table level " +
                     std::to_string(table.level()));
  if (n < 0) issues.push_back("level n must be >= 0");
  if (!starts_at_zero(u))
    issues.push_back("radial axis must start at u = 0, got " +
                     format_real(u.start()));

  std::vector<std::size_t> z_nodes;
  if (config.z_values.empty()) issues.push_back("no output z values requested");
  for (double z : config.z_values) {
    if (!(z > 0.0)) {
      issues.push_back("z = " + format_real(z) + " must be > 0");
      continue;
    }
    const auto m = u.find_node(z, kNodeTolerance);
    if (!m)
      issues.push_back("z = " + format_real(z) + " is not a radial-axis node");
    else
      z_nodes.push_back(*m);
  }
  if (z_nodes.size() == config.z_values.size() && z_nodes.size() >= 2) {
    const std::size_t dz = z_nodes[1] > z_nodes[0] ? z_nodes[1] - z_nodes[0] : 0;
    for (std::size_t q = 1; q < z_nodes.size(); ++q)
      if (dz == 0 || z_nodes[q] <= z_nodes[q - 1] ||
          z_nodes[q] - z_nodes[q - 1] != dz) {
        issues.push_back("z values must be increasing and equally spaced");
        break;
      }
  }

  const auto halo = static_cast<std::size_t>(std::max(n, 0));
  std::optional<std::size_t> k0, l0;
  std::optional<Axis> x_out, y_out;
  auto resolve = [&](const std::optional<Axis>& requested, const Axis& in,
                     const char* name, std::optional<std::size_t>& first,
                     std::optional<Axis>& out) {
    if (requested) {
      first = align_output(in, *requested, halo, name, issues);
      if (first) out = in.slice(*first, requested->count());
    } else if (in.count() < 2 * halo + 1) {
      issues.push_back(std::string(name) + " axis has " +
                       std::to_string(in.count()) + " nodes; level " +
                       std::to_string(n) + " needs at least " +
                       std::to_string(2 * halo + 1));
    } else {
      first = halo;
      out = in.trimmed(halo);
    }
  };
  resolve(config.x_out, field.x_axis(), "x", k0, x_out);
  resolve(config.y_out, field.y_axis(), "y", l0, y_out);

  if (!issues.empty()) throw ValidationError(std::move(issues));

  const double zstep = z_nodes.size() >= 2
                           ? u[z_nodes[1]] - u[z_nodes[0]]
                           : u.step();
  return Plan{*k0, *l0, *x_out, *y_out,
              Axis(u[z_nodes.front()], zstep, z_nodes.size()),
              std::move(z_nodes)};
}

}  // namespace

SphericalMeanField laplacian_xy(const SphericalMeanField& field) {
  const auto [nx, ny, nu] = field.shape();
  if (nx < 3 || ny < 3)
    throw DimensionError("laplacian_xy needs at least 3x3 nodes in (x, y), got " +
                         std::to_string(nx) + "x" + std::to_string(ny));
  const double ihx2 = 1.0 / (field.x_axis().step() * field.x_axis().step());
  const double ihy2 = 1.0 / (field.y_axis().step() * field.y_axis().step());

  SphericalMeanField out(field.x_axis().trimmed(1), field.y_axis().trimmed(1),
                         field.u_axis());
  for (std::size_t k = 1; k + 1 < nx; ++k)
    for (std::size_t l = 1; l + 1 < ny; ++l)
      for (std::size_t m = 0; m < nu; ++m) {
        const double c = field(k, l, m);
        out(k - 1, l - 1, m) =
            (field(k + 1, l, m) + field(k - 1, l, m) - 2.0 * c) * ihx2 +
            (field(k, l + 1, m) + field(k, l - 1, m) - 2.0 * c) * ihy2;
      }
  return out;
}

LaplacianStack laplacian_stack(const SphericalMeanField& field, int n) {
  if (n < 0) throw DomainError("stack level n must be >= 0");
  const auto need = 2 * static_cast<std::size_t>(n) + 1;
  const auto [nx, ny, nu] = field.shape();
  if (nx < need || ny < need)
    throw DimensionError("level " + std::to_string(n) + " needs at least " +
                         std::to_string(need) + "x" + std::to_string(need) +
                         " nodes in (x, y), got " + std::to_string(nx) + "x" +
                         std::to_string(ny));
  LaplacianStack stack;
  stack.layers.reserve(static_cast<std::size_t>(n) + 1);
  stack.layers.push_back(field);
  for (int i = 1; i <= n; ++i)
    stack.layers.push_back(laplacian_xy(stack.layers.back()));
  return stack;
}

double radial_term_at(std::span<const double> profile, const Axis& u_axis,
                      const QTable& table, int i, std::size_t mz) {
  if (i < 0 || i > table.level())
    throw DomainError("polynomial index i=" + std::to_string(i) +
                      " outside [0, " + std::to_string(table.level()) + "]");
  if (!starts_at_zero(u_axis))
    throw ContractError("radial integration needs a u axis starting at 0");
  if (mz == 0) throw DomainError("reconstruction height z must be > 0");
  if (mz >= u_axis.count() || profile.size() <= mz)
    throw ContractError("z node " + std::to_string(mz) +
                        " beyond the radial samples");

  const double h = u_axis.step();
  const double inv_mz = 1.0 / static_cast<double>(mz);
  // Q_{n,i}(0) = 0, so the u = 0 sample never contributes.
  auto integrand = [&](std::size_t m) {
    if (m == 0) return 0.0;
    const double s = static_cast<double>(m) * inv_mz;
    return eval_q_unchecked(table, i, s) * profile[m];
  };

  const std::size_t panels = mz;
  const std::size_t simpson_panels = panels - panels % 2;
  double simpson = 0.0;
  if (simpson_panels > 0) {
    double odd = 0.0;
    double even = 0.0;
    for (std::size_t m = 1; m < simpson_panels; m += 2) odd += integrand(m);
    for (std::size_t m = 2; m < simpson_panels; m += 2) even += integrand(m);
    simpson = (integrand(0) + 4.0 * odd + 2.0 * even + integrand(simpson_panels)) *
              (h / 3.0);
  }
  double tail = 0.0;
  if (panels % 2 == 1)
    tail = 0.5 * h * (integrand(panels - 1) + integrand(panels));

  const double z = u_axis[mz];
  return std::pow(z, 2 * i - 1) * (simpson + tail);
}

double radial_term(std::span<const double> profile, const Axis& u_axis,
                   const QTable& table, int i, double z) {
  return radial_term_at(profile, u_axis, table, i, z_node_index(u_axis, z));
}

double reconstruct_point(const SphericalMeanField& field, const QTable& table,
                         std::size_t k, std::size_t l, double z) {
  const int n = table.level();
  const auto halo = static_cast<std::size_t>(n);
  const std::size_t mz = z_node_index(field.u_axis(), z);
  const auto [nx, ny, nu] = field.shape();
  if (k >= nx || l >= ny)
    throw RangeError("output node (" + std::to_string(k) + "," +
                     std::to_string(l) + ") outside the field");
  if (k < halo || l < halo || k + halo >= nx || l + halo >= ny)
    throw DimensionError("node (" + std::to_string(k) + "," +
                         std::to_string(l) + ") lacks a halo of " +
                         std::to_string(halo) + " nodes");
  const SphericalMeanField local =
      field.window(k - halo, 2 * halo + 1, l - halo, 2 * halo + 1, 0, mz + 1);
  return assemble(laplacian_stack(local, n), table, halo, halo, mz);
}

void validate_config(const ReconstructionConfig& config,
                     const SphericalMeanField& field, const QTable& table) {
  (void)make_plan(config, field, table);
}

VolumeField reconstruct_volume(const SphericalMeanField& field,
                               const QTable& table,
                               const ReconstructionConfig& config) {
  const Plan plan = make_plan(config, field, table);
  const auto halo = static_cast<std::size_t>(config.n);
  const std::size_t nx = plan.x_out.count();
  const std::size_t ny = plan.y_out.count();

  // Only the footprint of the requested block is differentiated.
  const SphericalMeanField block =
      field.window(plan.k0 - halo, nx + 2 * halo, plan.l0 - halo,
                   ny + 2 * halo, 0, plan.z_nodes.back() + 1);
  const LaplacianStack stack = laplacian_stack(block, config.n);

  VolumeField out(plan.x_out, plan.y_out, plan.z_out);
  detail::parallel_for(nx, config.workers, [&](std::size_t kk) {
    for (std::size_t ll = 0; ll < ny; ++ll)
      for (std::size_t q = 0; q < plan.z_nodes.size(); ++q)
        out(kk, ll, q) =
            assemble(stack, table, kk + halo, ll + halo, plan.z_nodes[q]);
  });
  return out;
}

}  // namespace smrt
