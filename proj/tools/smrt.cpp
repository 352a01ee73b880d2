// smrt: command-line front end for the spherical mean transform toolkit.
//
// Exit codes: 0 success, 2 validation error, 3 numeric error.  Errors are
// reported on stderr as a JSON object {"errors": [{"kind", "message"}...]}.

#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "smrt/core.hpp"
#include "smrt/forward.hpp"
#include "smrt/inversion.hpp"
#include "smrt/oracle.hpp"
#include "smrt/phantoms.hpp"
#include "smrt/qpoly.hpp"
#include "smrt/report.hpp"

namespace {

using namespace smrt;

constexpr int kExitValidation = 2;
constexpr int kExitNumeric = 3;

int report_errors(const std::string& kind, const std::vector<std::string>& msgs,
                  int code) {
  nlohmann::json j;
  j["errors"] = nlohmann::json::array();
  for (const auto& m : msgs) j["errors"].push_back({{"kind", kind}, {"message", m}});
  std::cerr << j.dump() << '\n';
  return code;
}

void require_readable(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ValidationError("cannot read '" + path + "'");
}

void require_writable(const std::string& path) {
  namespace fs = std::filesystem;
  const fs::path p(path);
  if (fs::is_directory(p)) throw ValidationError("'" + path + "' is a directory");
  const fs::path dir = p.has_parent_path() ? p.parent_path() : fs::path(".");
  if (!fs::is_directory(dir) || ::access(dir.c_str(), W_OK) != 0)
    throw ValidationError("cannot write '" + path + "': directory not writable");
  if (fs::exists(p) && ::access(p.c_str(), W_OK) != 0)
    throw ValidationError("cannot write '" + path + "'");
}

std::vector<double> parse_reals(const std::string& text, const char* what) {
  std::vector<double> out;
  std::istringstream is(text);
  for (std::string tok; std::getline(is, tok, ',');) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(tok, &used));
      while (used < tok.size() && std::isspace(static_cast<unsigned char>(tok[used])))
        ++used;
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw ValidationError(std::string(what) + ": '" + tok + "' is not a number");
    }
  }
  return out;
}

Point3 parse_point(const std::string& text, const char* what) {
  const auto v = parse_reals(text, what);
  if (v.size() != 3)
    throw ValidationError(std::string(what) + " needs three comma-separated values");
  return {v[0], v[1], v[2]};
}

// "x(start,step,count) y(...) u(...)", the field-file header syntax.
std::array<Axis, 3> parse_grid(const std::string& text) {
  std::array<std::string, 3> names;
  try {
    const auto axes = parse_axes_spec(text, names);
    if (names != std::array<std::string, 3>{"x", "y", "u"})
      throw ValidationError("axes must be named x, y, u in that order");
    return axes;
  } catch (const ValidationError& e) {
    throw ValidationError("--grid: " + std::string(e.what()));
  }
}

struct PhantomOptions {
  std::string name = "monomial";
  std::string center = "0,0,2";
  double radius = 1.0;

  Phantom build() const {
    if (name == "monomial") return Phantom::monomial();
    if (name == "ball") {
      try {
        return Phantom::ball(parse_point(center, "--center"), radius);
      } catch (const DomainError& e) {
        throw ValidationError(e.what());
      }
    }
    throw ValidationError("unknown phantom '" + name + "' (monomial|ball)");
  }

  void add_to(CLI::App* app) {
    app->add_option("--phantom", name, "monomial | ball")->capture_default_str();
    app->add_option("--center", center, "ball centre x,y,z")->capture_default_str();
    app->add_option("--radius", radius, "ball radius")->capture_default_str();
  }
};

// Applies config-file values to options not given on the command line.
void apply_config(CLI::App* sub, const std::map<std::string, std::string>& cfg) {
  for (CLI::Option* opt : sub->get_options()) {
    if (opt->count() > 0) continue;
    const std::string key = opt->get_single_name();
    const auto it = cfg.find(key);
    if (it == cfg.end()) continue;
    opt->add_result(it->second);
    opt->run_callback();
  }
}

int run_forward(const PhantomOptions& ph, const std::string& grid, int polar,
                int azimuth, bool analytic, unsigned workers,
                const std::string& out) {
  require_writable(out);
  const Phantom phantom = ph.build();
  const auto axes = parse_grid(grid);
  if (axes[2].start() < 0.0) throw ValidationError("u axis must start at u >= 0");
  SphericalMeanField field(axes[0], axes[1], axes[2]);
  if (analytic) {
    field = analytic_mean_field(phantom, axes[0], axes[1], axes[2]);
  } else {
    SphereQuadratureRule rule = [&] {
      try {
        return SphereQuadratureRule(polar, azimuth);
      } catch (const DomainError& e) {
        throw ValidationError(e.what());
      }
    }();
    field = sample_mean_field([&](const Point3& p) { return phantom(p); },
                              axes[0], axes[1], axes[2], rule, workers);
  }
  write_mean_field(out, field);
  return 0;
}

int run_invert(const std::string& field_path, const std::string& qtable,
               const std::string& z_nodes, const std::string& x_out,
               const std::string& y_out, unsigned workers,
               const std::string& out) {
  require_readable(field_path);
  require_writable(out);
  const QTable table = resolve_qtable(qtable);
  const SphericalMeanField field = read_mean_field(field_path);

  ReconstructionConfig cfg;
  cfg.n = table.level();
  cfg.z_values = parse_reals(z_nodes, "--z-nodes");
  if (!x_out.empty()) cfg.x_out = parse_axis(x_out);
  if (!y_out.empty()) cfg.y_out = parse_axis(y_out);
  cfg.workers = workers;

  const VolumeField vol = reconstruct_volume(field, table, cfg);
  for (double v : vol.values())
    if (!std::isfinite(v))
      throw NumericError("reconstruction produced non-finite values");
  write_volume(out, vol);
  return 0;
}

int run_oracle(const std::string& mf, const std::string& qtable,
               const std::string& at) {
  const QTable table = resolve_qtable(qtable);
  const RationalPolynomial p = parse_polynomial(mf);
  const RationalPolynomial f = oracle_reconstruct(p, table);
  std::cout << f.to_string({"x", "y", "z"}) << '\n';
  if (!at.empty()) {
    std::istringstream is(at);
    std::vector<Rational> pt;
    for (std::string tok; std::getline(is, tok, ',');) pt.push_back(parse_rational(tok));
    if (pt.size() != 3) throw ValidationError("--at needs x,y,z");
    const Rational v = f(pt[0], pt[1], pt[2]);
    std::cout << "value=" << to_string(v) << '\n'
              << "value_real=" << format_real(to_double(v)) << '\n';
  }
  return 0;
}

int run_compare(const std::string& volume_path, const std::string& reference,
                const PhantomOptions& ph, const std::string& mf,
                const std::string& qtable, const std::string& out) {
  require_readable(volume_path);
  if (!out.empty()) require_writable(out);
  const VolumeField vol = read_volume(volume_path);

  ErrorReport rep;
  if (reference == "phantom") {
    const Phantom phantom = ph.build();
    rep = compare(vol, [&](const Point3& p) { return phantom(p); });
  } else if (reference == "oracle") {
    if (mf.empty()) throw ValidationError("--reference oracle needs --mf");
    const RationalPolynomial f =
        oracle_reconstruct(parse_polynomial(mf), resolve_qtable(qtable));
    rep = compare(vol, [&](const Point3& p) { return f.eval_double(p.x, p.y, p.z); });
  } else {
    throw ValidationError("unknown reference '" + reference + "' (phantom|oracle)");
  }
  const std::string text = format_report(rep);
  if (out.empty()) {
    std::cout << text;
  } else {
    std::ofstream os(out);
    os << text;
  }
  return 0;
}

int run_slice(const std::string& in, const std::string& axis_name, double value,
              const std::string& out, const std::string& pgm) {
  require_readable(in);
  require_writable(out);
  if (!pgm.empty()) require_writable(pgm);
  const FieldFile ff = read_field_csv(in);
  std::size_t axis = 3;
  for (std::size_t d = 0; d < 3; ++d)
    if (ff.names[d] == axis_name) axis = d;
  if (axis == 3) throw ValidationError("field has no axis named '" + axis_name + "'");
  const Slice s = take_slice(ff.field, ff.names, axis, value);
  {
    std::ofstream os(out);
    write_slice_csv(os, s);
  }
  if (!pgm.empty()) write_slice_pgm(pgm, s);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spherical mean Radon transform: forward model and local inversion"};
  // Checked after the config file is merged, so config can supply them.
  std::vector<CLI::Option*> required;
  const auto must = [&](CLI::Option* o) {
    o->description(o->get_description() + " (required)");
    required.push_back(o);
  };
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path,
                 "key = value file; command-line flags take precedence");

  // forward
  auto* fwd = app.add_subcommand("forward", "sample spherical means of a phantom");
  PhantomOptions fwd_ph;
  fwd_ph.add_to(fwd);
  std::string fwd_grid = "x(-0.2,0.1,25) y(-0.2,0.1,25) u(0,0.1,21)";
  int polar = 32, azimuth = 64;
  bool analytic = false;
  unsigned fwd_workers = 1;
  std::string fwd_out;
  fwd->add_option("--grid", fwd_grid, "x(start,step,count) y(...) u(...)")
      ->capture_default_str();
  fwd->add_option("--polar-order", polar, "Gauss-Legendre nodes in cos(theta)")
      ->capture_default_str();
  fwd->add_option("--azimuth", azimuth, "uniform nodes in phi")->capture_default_str();
  fwd->add_flag("--analytic", analytic, "use the closed-form mean instead of quadrature");
  fwd->add_option("--workers", fwd_workers, "threads (0 = all cores)")
      ->capture_default_str();
  must(fwd->add_option("--out", fwd_out, "output field CSV"));

  // invert
  auto* inv = app.add_subcommand("invert", "level-n reconstruction from a mean field");
  std::string inv_field, inv_qtable = "builtin:n2", inv_z, inv_x_out, inv_y_out, inv_out;
  unsigned inv_workers = 1;
  must(inv->add_option("--field", inv_field, "input mean-field CSV"));
  inv->add_option("--qtable", inv_qtable, "builtin:n2 or a Q-table file")
      ->capture_default_str();
  must(inv->add_option("--z-nodes", inv_z, "comma-separated output heights (u-grid nodes)"));
  inv->add_option("--x-out", inv_x_out, "output x axis start,step,count");
  inv->add_option("--y-out", inv_y_out, "output y axis start,step,count");
  inv->add_option("--workers", inv_workers, "threads (0 = all cores)")
      ->capture_default_str();
  must(inv->add_option("--out", inv_out, "output volume CSV"));

  // oracle
  auto* orc = app.add_subcommand("oracle", "exact reconstruction of polynomial mean data");
  std::string orc_mf, orc_qtable = "builtin:n2", orc_at;
  must(orc->add_option("--mf", orc_mf, "polynomial in x, y, u, e.g. \"1/8 x^2 y u^3\""));
  orc->add_option("--qtable", orc_qtable, "builtin:n2 or a Q-table file")
      ->capture_default_str();
  orc->add_option("--at", orc_at, "also evaluate at x,y,z (rationals)");

  // qtable
  auto* qt = app.add_subcommand("qtable", "inspect standard-polynomial tables");
  qt->require_subcommand(1);
  auto* qt_validate = qt->add_subcommand("validate", "check a Q-table file");
  std::string qt_file;
  must(qt_validate->add_option("file", qt_file, "Q-table file"));
  auto* qt_show = qt->add_subcommand("show", "print a table");
  int qt_n = 2;
  std::string qt_show_file;
  qt_show->add_option("--n", qt_n, "level of the built-in table")->capture_default_str();
  qt_show->add_option("--file", qt_show_file, "show a table file instead");
  bool qt_raw = false;
  qt_show->add_flag("--raw", qt_raw, "print in the Q-table file format");

  // compare
  auto* cmp = app.add_subcommand("compare", "error metrics of a volume against a reference");
  std::string cmp_vol, cmp_ref = "phantom", cmp_mf, cmp_qtable = "builtin:n2", cmp_out;
  PhantomOptions cmp_ph;
  must(cmp->add_option("--volume", cmp_vol, "volume CSV"));
  cmp->add_option("--reference", cmp_ref, "phantom | oracle")->capture_default_str();
  cmp_ph.add_to(cmp);
  cmp->add_option("--mf", cmp_mf, "mean-data polynomial for --reference oracle");
  cmp->add_option("--qtable", cmp_qtable, "Q table for --reference oracle")
      ->capture_default_str();
  cmp->add_option("--out", cmp_out, "write the report here instead of stdout");

  // slice
  auto* slc = app.add_subcommand("slice", "export a plane of a field as a CSV heightmap");
  std::string slc_in, slc_axis, slc_out, slc_pgm;
  double slc_value = 0.0;
  must(slc->add_option("--in", slc_in, "field or volume CSV"));
  must(slc->add_option("--axis", slc_axis, "axis to fix (x, y, u or z)"));
  must(slc->add_option("--value", slc_value, "node value on that axis"));
  must(slc->add_option("--out", slc_out, "output CSV"));
  slc->add_option("--pgm", slc_pgm, "also write a grayscale PGM");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report_errors("usage", {e.what()}, kExitValidation);
  }

  try {
    if (!config_path.empty()) {
      const auto cfg = load_config(config_path);
      for (CLI::App* sub : {fwd, inv, orc, cmp, slc})
        if (sub->parsed()) apply_config(sub, cfg);
    }
    std::vector<std::string> missing;
    for (CLI::App* sub : {fwd, inv, orc, qt_validate, cmp, slc}) {
      if (!sub->parsed()) continue;
      for (CLI::Option* o : sub->get_options())
        if (o->count() == 0 && std::find(required.begin(), required.end(), o) != required.end())
          missing.push_back(o->get_name() + " is required");
    }
    if (!missing.empty()) return report_errors("usage", missing, kExitValidation);

    if (fwd->parsed())
      return run_forward(fwd_ph, fwd_grid, polar, azimuth, analytic, fwd_workers, fwd_out);
    if (inv->parsed())
      return run_invert(inv_field, inv_qtable, inv_z, inv_x_out, inv_y_out, inv_workers,
                        inv_out);
    if (orc->parsed()) return run_oracle(orc_mf, orc_qtable, orc_at);
    if (qt_validate->parsed()) {
      const QTable t = load_qtable(qt_file);
      std::cout << "ok: n=" << t.level() << '\n';
      return 0;
    }
    if (qt_show->parsed()) {
      QTable t = builtin_n2();
      if (!qt_show_file.empty())
        t = load_qtable(qt_show_file);
      else if (qt_n != 2)
        throw ValidationError("no built-in table for n=" + std::to_string(qt_n) +
                              "; pass --file");
      if (qt_raw)
        write_qtable(std::cout, t);
      else
        std::cout << describe_qtable(t);
      return 0;
    }
    if (cmp->parsed())
      return run_compare(cmp_vol, cmp_ref, cmp_ph, cmp_mf, cmp_qtable, cmp_out);
    if (slc->parsed()) return run_slice(slc_in, slc_axis, slc_value, slc_out, slc_pgm);
  } catch (const ValidationError& e) {
    return report_errors(e.kind(), e.issues(), kExitValidation);
  } catch (const NumericError& e) {
    return report_errors(e.kind(), {e.what()}, kExitNumeric);
  } catch (const smrt::Error& e) {
    return report_errors(e.kind(), {e.what()}, kExitValidation);
  } catch (const CLI::ParseError& e) {
    return report_errors("usage", {e.what()}, kExitValidation);
  }
  return kExitValidation;
}
