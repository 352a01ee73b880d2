#include "smrt/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace smrt {

ErrorReport compare(const VolumeField& volume,
                    const std::function<double(const Point3&)>& reference) {
  const auto [nx, ny, nz] = volume.shape();
  ErrorReport r;
  r.node_count = volume.size();
  if (r.node_count == 0) throw DomainError("cannot compare an empty volume");

  double sq = 0.0;
  double ref_sq = 0.0;
  for (std::size_t k = 0; k < nx; ++k)
    for (std::size_t l = 0; l < ny; ++l)
      for (std::size_t m = 0; m < nz; ++m) {
        const Point3 p{volume.x_axis()[k], volume.y_axis()[l],
                       volume.z_axis()[m]};
        const double ref = reference(p);
        const double diff = volume(k, l, m) - ref;
        sq += diff * diff;
        ref_sq += ref * ref;
        r.linf = std::max(r.linf, std::abs(diff));
      }
  const auto count = static_cast<double>(r.node_count);
  r.l2 = std::sqrt(sq / count);
  r.reference_l2 = std::sqrt(ref_sq / count);
  r.rel_l2_defined = r.reference_l2 > 0.0;
  r.rel_l2 = r.rel_l2_defined ? r.l2 / r.reference_l2
                              : std::numeric_limits<double>::quiet_NaN();
  for (std::size_t d = 0; d < 3; ++d)
    r.region[d] = {volume.axis(d).start(), volume.axis(d).last()};
  return r;
}

std::string format_report(const ErrorReport& r) {
  std::ostringstream os;
  os << "l2=" << format_real(r.l2) << '\n'
     << "linf=" << format_real(r.linf) << '\n'
     << "rel_l2=" << (r.rel_l2_defined ? format_real(r.rel_l2) : "nan") << '\n'
     << "rel_l2_defined=" << (r.rel_l2_defined ? "true" : "false") << '\n'
     << "reference_l2=" << format_real(r.reference_l2) << '\n'
     << "node_count=" << r.node_count << '\n';
  static const char* names[] = {"x", "y", "z"};
  for (std::size_t d = 0; d < 3; ++d)
    os << "region_" << names[d] << '=' << format_real(r.region[d].first) << ','
       << format_real(r.region[d].second) << '\n';
  return os.str();
}

Slice take_slice(const GridField& field, const std::array<std::string, 3>& names,
                 std::size_t axis, double value) {
  if (axis > 2) throw RangeError("slice axis must be 0, 1 or 2");
  const auto node = field.axis(axis).find_node(value);
  if (!node)
    throw ContractError("slice value " + format_real(value) +
                        " is not a node of axis '" + names[axis] + "'");
  const std::size_t ra = axis == 0 ? 1 : 0;
  const std::size_t ca = axis == 2 ? 1 : 2;

  Slice s;
  s.row_name = names[ra];
  s.col_name = names[ca];
  for (std::size_t q = 0; q < field.axis(ra).count(); ++q)
    s.rows.push_back(field.axis(ra)[q]);
  for (std::size_t q = 0; q < field.axis(ca).count(); ++q)
    s.cols.push_back(field.axis(ca)[q]);
  s.values.reserve(s.rows.size() * s.cols.size());
  for (std::size_t r = 0; r < s.rows.size(); ++r)
    for (std::size_t c = 0; c < s.cols.size(); ++c) {
      std::array<std::size_t, 3> idx{};
      idx[axis] = *node;
      idx[ra] = r;
      idx[ca] = c;
      s.values.push_back(field(idx[0], idx[1], idx[2]));
    }
  return s;
}

void write_slice_csv(std::ostream& os, const Slice& s) {
  os << s.row_name << '\\' << s.col_name;
  for (double c : s.cols) os << ',' << format_real(c);
  os << '\n';
  for (std::size_t r = 0; r < s.rows.size(); ++r) {
    os << format_real(s.rows[r]);
    for (std::size_t c = 0; c < s.cols.size(); ++c)
      os << ',' << format_real(s(r, c));
    os << '\n';
  }
}

void export_slice(const GridField& field,
                  const std::array<std::string, 3>& names, std::size_t axis,
                  double value, const std::string& path) {
  const Slice s = take_slice(field, names, axis, value);
  std::ofstream os(path);
  if (!os) throw ValidationError("cannot open '" + path + "' for writing");
  write_slice_csv(os, s);
}

void write_slice_pgm(const std::string& path, const Slice& s) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ValidationError("cannot open '" + path + "' for writing");
  const auto [lo_it, hi_it] = std::minmax_element(s.values.begin(), s.values.end());
  const double lo = s.values.empty() ? 0.0 : *lo_it;
  const double hi = s.values.empty() ? 0.0 : *hi_it;
  const double scale = hi > lo ? 255.0 / (hi - lo) : 0.0;
  os << "P5\n" << s.cols.size() << ' ' << s.rows.size() << "\n255\n";
  for (double v : s.values) {
    const double g = std::isfinite(v) ? std::round((v - lo) * scale) : 0.0;
    os.put(static_cast<char>(static_cast<unsigned char>(std::clamp(g, 0.0, 255.0))));
  }
}

std::map<std::string, std::string> parse_config(std::istream& is,
                                                const std::string& source) {
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return std::string();
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
  };
  std::map<std::string, std::string> out;
  std::vector<std::string> issues;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (lineno == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    if (const auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    const auto where = source + ":" + std::to_string(lineno);
    // Several assignments may share a line, separated by ';'.
    std::istringstream parts(line);
    for (std::string part; std::getline(parts, part, ';');) {
      part = trim(part);
      if (part.empty()) continue;
      const auto eq = part.find('=');
      if (eq == std::string::npos) {
        issues.push_back(where + ": expected 'key = value'");
        continue;
      }
      std::string key = trim(part.substr(0, eq));
      std::replace(key.begin(), key.end(), '_', '-');
      const std::string value = trim(part.substr(eq + 1));
      if (key.empty()) {
        issues.push_back(where + ": empty key");
        continue;
      }
      if (!out.emplace(key, value).second)
        issues.push_back(where + ": duplicate key '" + key + "'");
    }
  }
  if (!issues.empty()) throw ValidationError(std::move(issues));
  return out;
}

std::map<std::string, std::string> load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ValidationError("cannot open config '" + path + "'");
  return parse_config(is, path);
}

}  // namespace smrt
