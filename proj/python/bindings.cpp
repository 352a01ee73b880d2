// Python bindings.  Fields cross the boundary as (nx, ny, nu) float64 arrays.

#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <cmath>

#include "smrt/core.hpp"
#include "smrt/forward.hpp"
#include "smrt/inversion.hpp"
#include "smrt/oracle.hpp"
#include "smrt/phantoms.hpp"
#include "smrt/qpoly.hpp"
#include "smrt/report.hpp"

namespace py = pybind11;
using namespace smrt;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

Array to_array(const GridField& f) {
  const auto [nx, ny, nu] = f.shape();
  Array out({nx, ny, nu});
  std::copy(f.values().begin(), f.values().end(), out.mutable_data());
  return out;
}

template <class Field>
Field from_array(const Axis& a, const Axis& b, const Axis& c, const Array& values) {
  Field f(a, b, c);
  const auto shape = f.shape();
  if (values.ndim() != 3 || static_cast<std::size_t>(values.shape(0)) != shape[0] ||
      static_cast<std::size_t>(values.shape(1)) != shape[1] ||
      static_cast<std::size_t>(values.shape(2)) != shape[2])
    throw DimensionError("array shape does not match the axes");
  std::copy(values.data(), values.data() + f.size(), f.values().begin());
  return f;
}

QTable table_or_builtin(const std::string& spec) { return resolve_qtable(spec); }

}  // namespace

PYBIND11_MODULE(_smrt, m) {
  m.doc() = "Spherical mean Radon transform: forward model and local inversion";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ValidationError>(m, "ValidationError", base.ptr());
  py::register_exception<ContractError>(m, "ContractError", base.ptr());
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<DimensionError>(m, "DimensionError", base.ptr());
  py::register_exception<RangeError>(m, "RangeError", base.ptr());
  py::register_exception<NumericError>(m, "NumericError", base.ptr());

  py::class_<Axis>(m, "Axis")
      .def(py::init<double, double, std::size_t>(), py::arg("start"), py::arg("step"),
           py::arg("count"))
      .def_property_readonly("start", &Axis::start)
      .def_property_readonly("step", &Axis::step)
      .def_property_readonly("count", &Axis::count)
      .def("node", &Axis::node)
      .def("nodes",
           [](const Axis& a) {
             std::vector<double> v(a.count());
             for (std::size_t k = 0; k < v.size(); ++k) v[k] = a[k];
             return v;
           })
      .def("find_node", &Axis::find_node, py::arg("value"), py::arg("tolerance") = 1e-9)
      .def("__len__", &Axis::count)
      .def("__eq__", [](const Axis& a, const Axis& b) { return a == b; })
      .def("__repr__", [](const Axis& a) {
        return "Axis(" + format_real(a.start()) + ", " + format_real(a.step()) + ", " +
               std::to_string(a.count()) + ")";
      });

  py::class_<SphericalMeanField>(m, "MeanField")
      .def(py::init([](const Axis& x, const Axis& y, const Axis& u, const Array& v) {
             return from_array<SphericalMeanField>(x, y, u, v);
           }),
           py::arg("x"), py::arg("y"), py::arg("u"), py::arg("values"))
      .def_property_readonly("x", &SphericalMeanField::x_axis)
      .def_property_readonly("y", &SphericalMeanField::y_axis)
      .def_property_readonly("u", &SphericalMeanField::u_axis)
      .def_property_readonly("shape", &SphericalMeanField::shape)
      .def("to_numpy", [](const SphericalMeanField& f) { return to_array(f); })
      .def("save", [](const SphericalMeanField& f, const std::string& p) { write_mean_field(p, f); })
      .def_static("load", &read_mean_field);

  py::class_<VolumeField>(m, "Volume")
      .def_property_readonly("x", &VolumeField::x_axis)
      .def_property_readonly("y", &VolumeField::y_axis)
      .def_property_readonly("z", &VolumeField::z_axis)
      .def_property_readonly("shape", &VolumeField::shape)
      .def("to_numpy", [](const VolumeField& f) { return to_array(f); })
      .def("save", [](const VolumeField& f, const std::string& p) { write_volume(p, f); })
      .def_static("load", &read_volume);

  py::class_<Phantom>(m, "Phantom")
      .def_static("monomial", &Phantom::monomial)
      .def_static(
          "ball",
          [](std::array<double, 3> c, double r) { return Phantom::ball({c[0], c[1], c[2]}, r); },
          py::arg("center") = std::array<double, 3>{0, 0, 2}, py::arg("radius") = 1.0)
      .def_property_readonly("name", &Phantom::name)
      .def_property_readonly("support_bound", &Phantom::support_bound)
      .def("__call__", [](const Phantom& p, double x, double y, double z) {
        return p(Point3{x, y, z});
      });

  m.def("analytic_mean", &analytic_mean, py::arg("phantom"), py::arg("cx"), py::arg("cy"),
        py::arg("u"));
  m.def(
      "spherical_mean",
      [](const Phantom& p, double cx, double cy, double u, int polar, int azimuth) {
        return spherical_mean(p, cx, cy, u, SphereQuadratureRule(polar, azimuth));
      },
      py::arg("phantom"), py::arg("cx"), py::arg("cy"), py::arg("u"),
      py::arg("polar_order") = 32, py::arg("azimuth") = 64);

  m.def(
      "forward",
      [](const Phantom& p, const Axis& x, const Axis& y, const Axis& u, bool analytic,
         int polar, int azimuth, unsigned workers) {
        if (analytic) return analytic_mean_field(p, x, y, u);
        py::gil_scoped_release release;
        return sample_mean_field(p, x, y, u, SphereQuadratureRule(polar, azimuth), workers);
      },
      py::arg("phantom"), py::arg("x"), py::arg("y"), py::arg("u"),
      py::arg("analytic") = false, py::arg("polar_order") = 32, py::arg("azimuth") = 64,
      py::arg("workers") = 1);

  m.def(
      "reconstruct",
      [](const SphericalMeanField& f, std::vector<double> z, const std::string& qtable,
         std::optional<Axis> x_out, std::optional<Axis> y_out, unsigned workers) {
        const QTable t = table_or_builtin(qtable);
        ReconstructionConfig cfg;
        cfg.n = t.level();
        cfg.z_values = std::move(z);
        cfg.x_out = x_out;
        cfg.y_out = y_out;
        cfg.workers = workers;
        py::gil_scoped_release release;
        return reconstruct_volume(f, t, cfg);
      },
      py::arg("field"), py::arg("z"), py::arg("qtable") = "builtin:n2",
      py::arg("x_out") = py::none(), py::arg("y_out") = py::none(), py::arg("workers") = 1);

  m.def(
      "oracle",
      [](const std::string& mf, const std::string& qtable) {
        return oracle_reconstruct(parse_polynomial(mf), table_or_builtin(qtable))
            .to_string({"x", "y", "z"});
      },
      py::arg("mean_data"), py::arg("qtable") = "builtin:n2",
      "Exact reconstruction of polynomial mean data in x, y, u, as a polynomial in x, y, z.");
  m.def(
      "oracle_value",
      [](const std::string& mf, const std::string& x, const std::string& y,
         const std::string& z, const std::string& qtable) {
        const auto f = oracle_reconstruct(parse_polynomial(mf), table_or_builtin(qtable));
        return to_string(f(parse_rational(x), parse_rational(y), parse_rational(z)));
      },
      py::arg("mean_data"), py::arg("x"), py::arg("y"), py::arg("z"),
      py::arg("qtable") = "builtin:n2", "Exact value as a 'p/q' string.");

  m.def(
      "q_moment",
      [](int i, int power, const std::string& qtable) {
        return to_string(q_power_moment(table_or_builtin(qtable), i, power));
      },
      py::arg("i"), py::arg("power"), py::arg("qtable") = "builtin:n2",
      "Exact integral of Q_{n,i}(s) s^power over [0, 1], as a 'p/q' string.");
  m.def(
      "eval_q", [](int i, double t, const std::string& qtable) {
        return eval_q(table_or_builtin(qtable), i, t);
      },
      py::arg("i"), py::arg("t"), py::arg("qtable") = "builtin:n2");
  m.def("describe_qtable", [](const std::string& q) { return describe_qtable(resolve_qtable(q)); },
        py::arg("qtable") = "builtin:n2");

  m.def(
      "compare",
      [](const VolumeField& v, const std::function<double(double, double, double)>& ref) {
        const auto r = compare(v, [&](const Point3& p) { return ref(p.x, p.y, p.z); });
        py::dict d;
        d["l2"] = r.l2;
        d["linf"] = r.linf;
        d["rel_l2"] = r.rel_l2_defined ? r.rel_l2 : std::nan("");
        d["rel_l2_defined"] = r.rel_l2_defined;
        d["reference_l2"] = r.reference_l2;
        d["node_count"] = r.node_count;
        return d;
      },
      py::arg("volume"), py::arg("reference"));
}
