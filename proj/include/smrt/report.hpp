#pragma once

// Error metrics against a reference function, plane slices for plotting,
// and the key = value run-config file.

#include <array>
#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "smrt/core.hpp"

namespace smrt {

struct ErrorReport {
  double l2 = 0.0;      ///< sqrt(mean squared difference)
  double linf = 0.0;    ///< max absolute difference
  double rel_l2 = 0.0;  ///< l2 / reference l2; NaN when undefined
  bool rel_l2_defined = false;
  double reference_l2 = 0.0;
  std::size_t node_count = 0;
  std::array<std::pair<double, double>, 3> region{};  ///< [min, max] per axis
};

ErrorReport compare(const VolumeField& volume,
                    const std::function<double(const Point3&)>& reference);

/// key=value lines, as printed by the CLI.
std::string format_report(const ErrorReport& r);

/// 2D matrix obtained by fixing one axis of a field at a node.
struct Slice {
  std::string row_name, col_name;
  std::vector<double> rows, cols;
  std::vector<double> values;  // row-major, rows.size() x cols.size()
  double operator()(std::size_t r, std::size_t c) const {
    return values[r * cols.size() + c];
  }
};

/// `axis` is 0, 1 or 2; `value` must be a node of that axis (ContractError).
Slice take_slice(const GridField& field, const std::array<std::string, 3>& names,
                 std::size_t axis, double value);

/// First line "row\col,c0,c1,..." then one line per row: "r,v0,v1,...".
void write_slice_csv(std::ostream& os, const Slice& s);
void export_slice(const GridField& field,
                  const std::array<std::string, 3>& names, std::size_t axis,
                  double value, const std::string& path);

/// Binary PGM, values mapped linearly from [min, max] to [0, 255].
void write_slice_pgm(const std::string& path, const Slice& s);

/// UTF-8 `key = value` assignments, one per line or separated by `;`;
/// `#` starts a comment.  Underscores in keys read as dashes.  Duplicate keys and
/// lines without '=' are validation errors naming the line.
std::map<std::string, std::string> parse_config(std::istream& is,
                                                const std::string& source);
std::map<std::string, std::string> load_config(const std::string& path);

}  // namespace smrt
