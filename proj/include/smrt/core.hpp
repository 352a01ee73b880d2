#pragma once

// Grids, axes and field containers shared by the forward model, the
// inversion engine and the reporting tools.
//
// Storage order for every 3D field is: third axis fastest, then second,
// then first.  For a SphericalMeanField that is u fastest, then y, then x,
// so the radial profile at a fixed (x, y) is a contiguous run.

#include <array>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace smrt {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "error"; }
};

class RangeError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "range"; }
};

class DomainError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "domain"; }
};

class DimensionError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "dimension"; }
};

class ContractError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "contract"; }
};

/// A non-finite value was produced while evaluating a numeric kernel.
class NumericError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "numeric"; }
};

/// Carries every violation found, not just the first one.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<std::string> issues);
  ValidationError(const std::string& issue)
      : ValidationError(std::vector<std::string>{issue}) {}

  const char* kind() const noexcept override { return "validation"; }
  const std::vector<std::string>& issues() const noexcept { return issues_; }

 private:
  std::vector<std::string> issues_;
};

struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

/// Uniform 1D grid: node(k) = start + k * step for 0 <= k < count.
class Axis {
 public:
  Axis(double start, double step, std::size_t count);

  double start() const noexcept { return start_; }
  double step() const noexcept { return step_; }
  std::size_t count() const noexcept { return count_; }

  /// Range-checked node coordinate.
  double node(std::size_t k) const;
  double operator[](std::size_t k) const noexcept {
    return start_ + static_cast<double>(k) * step_;
  }
  double last() const noexcept { return (*this)[count_ - 1]; }

  /// Index of the node within `tolerance * step` of `value`, if any.
  std::optional<std::size_t> find_node(double value,
                                       double tolerance = 1e-9) const;

  /// Drops `cells` nodes from each end.
  Axis trimmed(std::size_t cells) const;
  /// Nodes [first, first + count).
  Axis slice(std::size_t first, std::size_t count) const;

  bool operator==(const Axis&) const = default;

 private:
  double start_;
  double step_;
  std::size_t count_;
};

/// Dense scalar samples on a tensor product of three axes.
class GridField {
 public:
  GridField(Axis a0, Axis a1, Axis a2);

  const Axis& axis(std::size_t dim) const { return axes_.at(dim); }
  const std::array<Axis, 3>& axes() const noexcept { return axes_; }
  std::array<std::size_t, 3> shape() const noexcept {
    return {axes_[0].count(), axes_[1].count(), axes_[2].count()};
  }
  std::size_t size() const noexcept { return values_.size(); }

  std::size_t index(std::size_t k, std::size_t l, std::size_t m) const noexcept {
    return (k * axes_[1].count() + l) * axes_[2].count() + m;
  }

  /// Range-checked read; no interpolation.
  double at(std::size_t k, std::size_t l, std::size_t m) const;
  void set(std::size_t k, std::size_t l, std::size_t m, double v);

  double operator()(std::size_t k, std::size_t l, std::size_t m) const noexcept {
    return values_[index(k, l, m)];
  }
  double& operator()(std::size_t k, std::size_t l, std::size_t m) noexcept {
    return values_[index(k, l, m)];
  }

  /// Contiguous samples along the third axis at (k, l).
  std::span<const double> profile(std::size_t k, std::size_t l) const;

  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }

  bool operator==(const GridField&) const = default;

 protected:
  void check_index(std::size_t k, std::size_t l, std::size_t m) const;

  std::array<Axis, 3> axes_;
  std::vector<double> values_;
};

/// Samples of Mf(x_k, y_l, u_m); radii are nonnegative.
class SphericalMeanField : public GridField {
 public:
  SphericalMeanField(Axis x_axis, Axis y_axis, Axis u_axis);

  const Axis& x_axis() const noexcept { return axes_[0]; }
  const Axis& y_axis() const noexcept { return axes_[1]; }
  const Axis& u_axis() const noexcept { return axes_[2]; }

  /// Copy of the sub-block [k0, k0+nk) x [l0, l0+nl) x [m0, m0+nm).
  SphericalMeanField window(std::size_t k0, std::size_t nk, std::size_t l0,
                            std::size_t nl, std::size_t m0,
                            std::size_t nm) const;
};

/// Reconstructed f(x, y, z) on a grid strictly above the detector plane.
class VolumeField : public GridField {
 public:
  VolumeField(Axis x_axis, Axis y_axis, Axis z_axis);

  const Axis& x_axis() const noexcept { return axes_[0]; }
  const Axis& y_axis() const noexcept { return axes_[1]; }
  const Axis& z_axis() const noexcept { return axes_[2]; }
};

// ---- text I/O --------------------------------------------------------------

/// `%.17g` formatting used for every real written to disk.
std::string format_real(double v);

/// Header `# axes: x(start,step,count) y(...) u(...)` followed by rows
/// `k,l,m,value`.  The axis names are written verbatim.
void write_field_csv(std::ostream& os, const GridField& field,
                     const std::array<std::string, 3>& names);
void write_field_csv(const std::string& path, const GridField& field,
                     const std::array<std::string, 3>& names);

struct FieldFile {
  std::array<std::string, 3> names;
  GridField field;
};

FieldFile read_field_csv(std::istream& is, const std::string& source = "<stream>");
FieldFile read_field_csv(const std::string& path);

SphericalMeanField read_mean_field(const std::string& path);
VolumeField read_volume(const std::string& path);
void write_mean_field(const std::string& path, const SphericalMeanField& f);
void write_volume(const std::string& path, const VolumeField& v);

/// Parses "x(start,step,count) y(...) u(...)" (the field-file header body).
std::array<Axis, 3> parse_axes_spec(const std::string& text,
                                    std::array<std::string, 3>& names);

/// Parses `start,step,count`.
Axis parse_axis(const std::string& text);

}  // namespace smrt
