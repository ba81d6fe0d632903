#include "qctrl/cli.hpp"
#include "qctrl/criteria.hpp"
#include "qctrl/io.hpp"
#include "qctrl/kinematics.hpp"
#include "qctrl/lieclosure.hpp"
#include "qctrl/random.hpp"
#include "qctrl/system.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <iostream>
#include <sstream>

namespace py = pybind11;
using namespace qctrl;

namespace {

std::string report_json(const HamiltonianSystem& system, std::optional<Tolerances> tol) {
  ReportDocument doc;
  doc.report = tol ? analyze(system, *tol) : analyze(system);
  doc.dim = system.dim();
  doc.tool_version = std::string(tool_version());
  const std::string input = serialize_system(system);
  doc.input_digest = "sha256:" + sha256_hex(input);
  return serialize_report(doc);
}

int run_cli(const std::vector<std::string>& args) {
  std::vector<const char*> argv{"qctrl"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = 0;
  {
    py::gil_scoped_release release;
    code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  }
  py::print(out.str(), py::arg("end") = "", py::arg("flush") = true);
  if (!err.str().empty())
    py::print(err.str(), py::arg("end") = "", py::arg("file") = py::module_::import("sys").attr("stderr"));
  return code;
}

}  // namespace

PYBIND11_MODULE(_qctrl, m) {
  m.doc() = "Controllability analysis of finite-level Hamiltonian quantum systems";
  m.attr("__version__") = std::string(tool_version());
  m.attr("RANDOM_ALGORITHM") = std::string(kRandomAlgorithm);

  auto error = py::register_exception<Error>(m, "Error", PyExc_ValueError);
  py::register_exception<DimensionError>(m, "DimensionError", error);
  py::register_exception<ValidationError>(m, "ValidationError", error);
  py::register_exception<InconsistencyError>(m, "InconsistencyError", error);
  py::register_exception<ParseError>(m, "ParseError", error);

  py::class_<Tolerances>(m, "Tolerances")
      .def(py::init<>())
      .def(py::init([](double zero, double degeneracy) {
             Tolerances t{zero, degeneracy};
             t.validate();
             return t;
           }),
           py::arg("zero"), py::arg("degeneracy"))
      .def_readwrite("zero", &Tolerances::zero)
      .def_readwrite("degeneracy", &Tolerances::degeneracy)
      .def("__repr__", [](const Tolerances& t) {
        std::ostringstream os;
        os << "Tolerances(zero=" << t.zero << ", degeneracy=" << t.degeneracy << ")";
        return os.str();
      });

  py::class_<HamiltonianSystem>(m, "HamiltonianSystem")
      .def(py::init([](Matrix h0, std::vector<Matrix> controls, std::vector<std::string> labels,
                       std::optional<Tolerances> tol) {
             HamiltonianSystem s{std::move(h0), std::move(controls), std::move(labels),
                                 tol.value_or(Tolerances{})};
             s.validate();
             return s;
           }),
           py::arg("h0"), py::arg("controls"), py::arg("labels") = std::vector<std::string>{},
           py::arg("tol") = py::none())
      .def_readonly("h0", &HamiltonianSystem::h0)
      .def_readonly("controls", &HamiltonianSystem::controls)
      .def_readonly("labels", &HamiltonianSystem::labels)
      .def_readonly("tol", &HamiltonianSystem::tol)
      .def_property_readonly("dim", &HamiltonianSystem::dim)
      .def("__eq__", [](const HamiltonianSystem& a, const HamiltonianSystem& b) { return a == b; });

  m.def("build_chain", [](const std::vector<double>& e, const std::vector<double>& d) {
        return build_chain(e, d);
      },
        py::arg("energies"), py::arg("dipoles"));
  m.def("build_lambda", [](double e1, double e2, double d) {
        std::ostringstream warnings;
        HamiltonianSystem s = build_lambda(e1, e2, d, &warnings);
        if (!warnings.str().empty())
          PyErr_WarnEx(PyExc_UserWarning, warnings.str().c_str(), 1);
        return s;
      },
        py::arg("e1"), py::arg("e2"), py::arg("d"));
  m.def("random_system",
        [](Eigen::Index n, int controls, std::uint64_t seed, bool strongly_regular, bool connected,
           bool rotate) {
          return random_system(n, controls, seed, {strongly_regular, connected, rotate});
        },
        py::arg("n"), py::arg("controls"), py::arg("seed"), py::arg("strongly_regular") = false,
        py::arg("connected") = false, py::arg("rotate") = true);

  m.def("lie_closure",
        [](const HamiltonianSystem& s) { return lie_closure(s.generators(), s.tol).elements; },
        py::arg("system"), "Orthonormal basis of the dynamical Lie algebra.");
  m.def("lie_dimension",
        [](const HamiltonianSystem& s) { return lie_closure(s.generators(), s.tol).dimension(); },
        py::arg("system"));
  m.def("commutant_dimension",
        [](const HamiltonianSystem& s) { return commutant_dimension(s.hamiltonians(), s.tol); },
        py::arg("system"));
  m.def("dark_states",
        [](const HamiltonianSystem& s) { return detect_dark_states(s.h0, s.controls, s.tol); },
        py::arg("system"));
  m.def("analyze_json", &report_json, py::arg("system"), py::arg("tol") = py::none());

  m.def("parse_system", [](const std::string& text) { return parse_system(text); }, py::arg("text"));
  m.def("serialize_system", &serialize_system, py::arg("system"));

  m.def("purity", [](const Matrix& rho, const Tolerances& tol) {
        return validate_density(rho, tol).purity();
      },
        py::arg("rho"), py::arg("tol") = Tolerances{});
  m.def("is_pure", [](const Matrix& rho, const Tolerances& tol) {
        return is_pure(validate_density(rho, tol), tol);
      },
        py::arg("rho"), py::arg("tol") = Tolerances{});
  m.def("kinematically_equivalent",
        [](const Matrix& a, const Matrix& b, const Tolerances& tol) {
          return kinematically_equivalent(validate_density(a, tol), validate_density(b, tol), tol);
        },
        py::arg("rho1"), py::arg("rho2"), py::arg("tol") = Tolerances{});

  m.def("run_cli", &run_cli, py::arg("args"), "Run the command line in-process; returns the exit code.");
}
