#include "smrt/core.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <regex>
#include <sstream>

namespace smrt {

namespace {

std::string join_issues(const std::vector<std::string>& issues) {
  std::string out;
  for (const auto& s : issues) {
    if (!out.empty()) out += "; ";
    out += s;
  }
  return out;
}

std::size_t checked_product(const Axis& a, const Axis& b, const Axis& c) {
  return a.count() * b.count() * c.count();
}

}  // namespace

ValidationError::ValidationError(std::vector<std::string> issues)
    : Error(join_issues(issues)), issues_(std::move(issues)) {}

// ---- Axis ------------------------------------------------------------------

Axis::Axis(double start, double step, std::size_t count)
    : start_(start), step_(step), count_(count) {
  if (!std::isfinite(start) || !std::isfinite(step) || !(step > 0.0))
    throw DomainError("axis step must be finite and positive");
  if (count < 1) throw DomainError("axis count must be at least 1");
}

double Axis::node(std::size_t k) const {
  if (k >= count_)
    throw RangeError("axis index " + std::to_string(k) + " out of range [0, " +
                     std::to_string(count_) + ")");
  return (*this)[k];
}

std::optional<std::size_t> Axis::find_node(double value,
                                           double tolerance) const {
  const double pos = (value - start_) / step_;
  const double k = std::round(pos);
  if (!std::isfinite(pos) || k < 0.0 || k >= static_cast<double>(count_))
    return std::nullopt;
  if (std::abs(pos - k) > tolerance) return std::nullopt;
  return static_cast<std::size_t>(k);
}

Axis Axis::trimmed(std::size_t cells) const {
  if (2 * cells >= count_)
    throw DimensionError("cannot trim " + std::to_string(cells) +
                         " cells per side from an axis of " +
                         std::to_string(count_) + " nodes");
  return Axis((*this)[cells], step_, count_ - 2 * cells);
}

Axis Axis::slice(std::size_t first, std::size_t count) const {
  if (count == 0 || first + count > count_)
    throw RangeError("axis slice out of range");
  return Axis((*this)[first], step_, count);
}

// ---- fields ----------------------------------------------------------------

GridField::GridField(Axis a0, Axis a1, Axis a2)
    : axes_{a0, a1, a2}, values_(checked_product(a0, a1, a2), 0.0) {}

void GridField::check_index(std::size_t k, std::size_t l, std::size_t m) const {
  if (k >= axes_[0].count() || l >= axes_[1].count() || m >= axes_[2].count()) {
    std::ostringstream os;
    os << "field index (" << k << "," << l << "," << m
       << ") out of range for shape (" << axes_[0].count() << ","
       << axes_[1].count() << "," << axes_[2].count() << ")";
    throw RangeError(os.str());
  }
}

double GridField::at(std::size_t k, std::size_t l, std::size_t m) const {
  check_index(k, l, m);
  return values_[index(k, l, m)];
}

void GridField::set(std::size_t k, std::size_t l, std::size_t m, double v) {
  check_index(k, l, m);
  values_[index(k, l, m)] = v;
}

std::span<const double> GridField::profile(std::size_t k, std::size_t l) const {
  check_index(k, l, 0);
  return std::span<const double>(values_).subspan(index(k, l, 0),
                                                  axes_[2].count());
}

SphericalMeanField::SphericalMeanField(Axis x_axis, Axis y_axis, Axis u_axis)
    : GridField(x_axis, y_axis, u_axis) {
  if (u_axis.start() < 0.0)
    throw ContractError("radial axis must start at u >= 0");
}

SphericalMeanField SphericalMeanField::window(std::size_t k0, std::size_t nk,
                                              std::size_t l0, std::size_t nl,
                                              std::size_t m0,
                                              std::size_t nm) const {
  SphericalMeanField out(x_axis().slice(k0, nk), y_axis().slice(l0, nl),
                         u_axis().slice(m0, nm));
  for (std::size_t k = 0; k < nk; ++k)
    for (std::size_t l = 0; l < nl; ++l)
      for (std::size_t m = 0; m < nm; ++m)
        out(k, l, m) = (*this)(k0 + k, l0 + l, m0 + m);
  return out;
}

VolumeField::VolumeField(Axis x_axis, Axis y_axis, Axis z_axis)
    : GridField(x_axis, y_axis, z_axis) {
  if (!(z_axis.start() > 0.0))
    throw ContractError("volume z axis must lie strictly above the plane z = 0");
}

// ---- CSV -------------------------------------------------------------------

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_field_csv(std::ostream& os, const GridField& field,
                     const std::array<std::string, 3>& names) {
  os << "# axes:";
  for (std::size_t d = 0; d < 3; ++d) {
    const Axis& a = field.axis(d);
    os << ' ' << names[d] << '(' << format_real(a.start()) << ','
       << format_real(a.step()) << ',' << a.count() << ')';
  }
  os << '\n';
  const auto [nx, ny, nu] = field.shape();
  for (std::size_t k = 0; k < nx; ++k)
    for (std::size_t l = 0; l < ny; ++l)
      for (std::size_t m = 0; m < nu; ++m)
        os << k << ',' << l << ',' << m << ',' << format_real(field(k, l, m))
           << '\n';
}

void write_field_csv(const std::string& path, const GridField& field,
                     const std::array<std::string, 3>& names) {
  std::ofstream os(path);
  if (!os) throw ValidationError("cannot open '" + path + "' for writing");
  write_field_csv(os, field, names);
  if (!os) throw ValidationError("write to '" + path + "' failed");
}

std::array<Axis, 3> parse_axes_spec(const std::string& text,
                                    std::array<std::string, 3>& names) {
  static const std::regex axis_re(
      R"((\w+)\(\s*([^,\s]+)\s*,\s*([^,\s]+)\s*,\s*(\d+)\s*\))");
  std::vector<Axis> axes;
  auto it = std::sregex_iterator(text.begin(), text.end(), axis_re);
  for (; it != std::sregex_iterator(); ++it) {
    if (axes.size() == 3) throw ValidationError("more than three axes");
    const auto& mt = *it;
    try {
      names[axes.size()] = mt[1];
      axes.emplace_back(std::stod(mt[2]), std::stod(mt[3]),
                        static_cast<std::size_t>(std::stoull(mt[4])));
    } catch (const Error& e) {
      throw ValidationError(std::string("axis '") + mt.str() + "': " + e.what());
    } catch (const std::exception&) {
      throw ValidationError("malformed axis '" + mt.str() + "'");
    }
  }
  if (axes.size() != 3)
    throw ValidationError("expected three axes 'name(start,step,count)'");
  return {axes[0], axes[1], axes[2]};
}

FieldFile read_field_csv(std::istream& is, const std::string& source) {
  std::string header;
  if (!std::getline(is, header))
    throw ValidationError(source + ": empty field file");

  const std::string prefix = "# axes:";
  if (header.rfind(prefix, 0) != 0)
    throw ValidationError(source + ":1: missing '# axes:' header");
  std::array<std::string, 3> names;
  std::array<Axis, 3> axes = [&] {
    try {
      return parse_axes_spec(header.substr(prefix.size()), names);
    } catch (const ValidationError& e) {
      throw ValidationError(source + ":1: " + e.what());
    }
  }();

  FieldFile out{names, GridField(axes[0], axes[1], axes[2])};
  std::vector<char> seen(out.field.size(), 0);
  std::vector<std::string> issues;

  std::string line;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    std::string tok[4];
    int got = 0;
    while (got < 4 && std::getline(row, tok[got], ',')) ++got;
    std::string extra;
    if (got != 4 || std::getline(row, extra)) {
      issues.push_back(source + ":" + std::to_string(lineno) +
                       ": expected 'k,l,m,value'");
      continue;
    }
    try {
      const auto k = std::stoull(tok[0]);
      const auto l = std::stoull(tok[1]);
      const auto m = std::stoull(tok[2]);
      const double v = std::stod(tok[3]);
      out.field.set(k, l, m, v);
      auto& flag = seen[out.field.index(k, l, m)];
      if (flag)
        issues.push_back(source + ":" + std::to_string(lineno) +
                         ": duplicate sample");
      flag = 1;
    } catch (const RangeError& e) {
      issues.push_back(source + ":" + std::to_string(lineno) + ": " + e.what());
    } catch (const std::exception&) {
      issues.push_back(source + ":" + std::to_string(lineno) +
                       ": malformed row");
    }
  }
  const auto missing =
      static_cast<std::size_t>(std::count(seen.begin(), seen.end(), 0));
  if (missing > 0)
    issues.push_back(source + ": " + std::to_string(missing) +
                     " samples missing");
  if (!issues.empty()) throw ValidationError(std::move(issues));
  return out;
}

FieldFile read_field_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ValidationError("cannot open '" + path + "' for reading");
  return read_field_csv(is, path);
}

SphericalMeanField read_mean_field(const std::string& path) {
  FieldFile ff = read_field_csv(path);
  if (ff.names[2] != "u")
    throw ValidationError(path + ": third axis must be 'u' for a mean field");
  SphericalMeanField out(ff.field.axis(0), ff.field.axis(1), ff.field.axis(2));
  std::copy(ff.field.values().begin(), ff.field.values().end(),
            out.values().begin());
  return out;
}

VolumeField read_volume(const std::string& path) {
  FieldFile ff = read_field_csv(path);
  if (ff.names[2] != "z")
    throw ValidationError(path + ": third axis must be 'z' for a volume");
  VolumeField out(ff.field.axis(0), ff.field.axis(1), ff.field.axis(2));
  std::copy(ff.field.values().begin(), ff.field.values().end(),
            out.values().begin());
  return out;
}

void write_mean_field(const std::string& path, const SphericalMeanField& f) {
  write_field_csv(path, f, {"x", "y", "u"});
}

void write_volume(const std::string& path, const VolumeField& v) {
  write_field_csv(path, v, {"x", "y", "z"});
}

Axis parse_axis(const std::string& text) {
  std::istringstream is(text);
  std::string a, b, c;
  if (!std::getline(is, a, ',') || !std::getline(is, b, ',') ||
      !std::getline(is, c))
    throw ValidationError("axis '" + text + "' must be start,step,count");
  try {
    const double start = std::stod(a);
    const double step = std::stod(b);
    const long long count = std::stoll(c);
    if (count < 1) throw ValidationError("axis count must be >= 1 in '" + text + "'");
    return Axis(start, step, static_cast<std::size_t>(count));
  } catch (const ValidationError&) {
    throw;
  } catch (const Error& e) {
    throw ValidationError("axis '" + text + "': " + e.what());
  } catch (const std::exception&) {
    throw ValidationError("axis '" + text + "' must be start,step,count");
  }
}

}  // namespace smrt
