#pragma once

// Level-n reconstruction from spherical means centred on z = 0:
//
//   f_n(x,y,z) = 2 [ (2n^2+3n+1) Mf(x,y,z)
//                    + sum_{i=0}^{n} int_0^z z^{2i-1} Q_{n,i}(u/z) Lap^i Mf(x,y,u) du ]
//
// Lap is the 2D Laplacian in (x, y), discretised with the 5-point stencil.
// Each application consumes one grid cell per side (no one-sided stencils),
// so a value at (x_k, y_l, z) reads only samples with |k'-k| + |l'-l| <= n
// and u <= z.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "smrt/core.hpp"
#include "smrt/qpoly.hpp"

namespace smrt {

/// Interior 5-point Laplacian in (x, y); output axes lose one node per side.
/// DimensionError when either count is below 3.
SphericalMeanField laplacian_xy(const SphericalMeanField& field);

/// layers[i] = Lap^i(Mf), shrunk by i nodes per side in x and y.
struct LaplacianStack {
  std::vector<SphericalMeanField> layers;

  std::size_t level() const noexcept { return layers.size() - 1; }
};

LaplacianStack laplacian_stack(const SphericalMeanField& field, int n);

/// Composite Simpson estimate of int_0^z z^{2i-1} Q_{n,i}(u/z) g(u) du over
/// the native u nodes.  `profile` holds g at u_axis nodes; z must be a node
/// (ContractError otherwise) and positive (DomainError).  The axis must
/// start at u = 0.  With an odd number of panels the last one is a
/// trapezoid.
double radial_term(std::span<const double> profile, const Axis& u_axis,
                   const QTable& table, int i, double z);

/// Same, with z given as a u-axis node index.
double radial_term_at(std::span<const double> profile, const Axis& u_axis,
                      const QTable& table, int i, std::size_t z_index);

/// Level-n value at (x_k, y_l, z).  Reads only the radius-n stencil footprint
/// of (k, l) and radii up to z.
double reconstruct_point(const SphericalMeanField& field, const QTable& table,
                         std::size_t k, std::size_t l, double z);

struct ReconstructionConfig {
  int n = 2;
  /// Output heights; each must be a positive u-axis node, and together they
  /// must be equally spaced.
  std::vector<double> z_values;
  /// Output x/y axes.  Default: the mean-field axes trimmed by n per side.
  std::optional<Axis> x_out;
  std::optional<Axis> y_out;
  /// 0 uses the hardware concurrency.  Results do not depend on it.
  unsigned workers = 1;
};

/// Throws ValidationError listing every mismatch between config and field.
void validate_config(const ReconstructionConfig& config,
                     const SphericalMeanField& field, const QTable& table);

VolumeField reconstruct_volume(const SphericalMeanField& field,
                               const QTable& table,
                               const ReconstructionConfig& config);

/// 2n^2 + 3n + 1.
constexpr double center_weight(int n) noexcept {
  return 2.0 * n * n + 3.0 * n + 1.0;
}

}  // namespace smrt
