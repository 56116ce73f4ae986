#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "vaqw/coarse_grain.hpp"
#include "vaqw/evolve.hpp"
#include "vaqw/examples.hpp"
#include "vaqw/spectral.hpp"
#include "vaqw/walk_file.hpp"

namespace py = pybind11;
using namespace vaqw;

namespace {

ComplexMatrix from_numpy(const Eigen::MatrixXcd& m) { return ComplexMatrix(m); }

G1Params make_g1(double n, double m, const std::string& cls, int sign) {
  G1Params p{parse_solution_class(cls), n, m, sign};
  p.validate();
  return p;
}

// Shape (N, ..., N, bands); axis order matches the grid's first-slowest layout.
py::array_t<double> grid_array(const DispersionGrid& g) {
  std::vector<py::ssize_t> shape(g.dimension, static_cast<py::ssize_t>(g.resolution));
  shape.push_back(static_cast<py::ssize_t>(g.bands));
  py::array_t<double> out(shape);
  std::copy(g.phases.begin(), g.phases.end(), out.mutable_data());
  return out;
}

}  // namespace

PYBIND11_MODULE(vaqw, m) {
  m.doc() = "Quantum walks on virtually Abelian groups";

  py::register_exception<NonUnitaryError>(m, "NonUnitaryError", PyExc_ValueError);
  py::register_exception<TorusTooSmallError>(m, "TorusTooSmallError", PyExc_ValueError);
  py::register_exception<WalkFileError>(m, "WalkFileError", PyExc_ValueError);

  py::class_<WalkSpec>(m, "Walk")
      .def_property_readonly("dimension", &WalkSpec::dimension)
      .def_property_readonly("index", &WalkSpec::index)
      .def_property_readonly("coin_dim", &WalkSpec::coin_dim)
      .def_property_readonly("generators",
                             [](const WalkSpec& w) {
                               std::vector<std::string> names;
                               for (auto g : w.alphabet().all()) names.push_back(w.alphabet().name(g));
                               return names;
                             })
      .def("matrix", [](const WalkSpec& w, const std::string& g) { return w.matrix(w.alphabet().id(g)).eigen(); })
      .def("with_matrix",
           [](const WalkSpec& w, const std::string& g, const Eigen::MatrixXcd& a) {
             TransitionFamily t = w.transitions();
             t[w.alphabet().id(g)] = from_numpy(a);
             return w.with_transitions(std::move(t));
           })
      .def("to_json", [](const WalkSpec& w) { return export_walk_file(w); })
      .def("__repr__", [](const WalkSpec& w) {
        return "<vaqw.Walk dimension=" + std::to_string(w.dimension()) + " index=" + std::to_string(w.index()) +
               " coin_dim=" + std::to_string(w.coin_dim()) + ">";
      });

  m.def(
      "g1_walk", [](double n, double mm, const std::string& cls, int sign) { return g1_walk(make_g1(n, mm, cls, sign)); },
      py::arg("n") = 1.0, py::arg("m") = 0.0, py::arg("solution") = "I", py::arg("sign") = 1);
  m.def("g2_walk", [](const std::string& cls) { return g2_walk(parse_solution_class(cls)); },
        py::arg("solution") = "I");

  m.def("g1_closed_form", [](std::vector<double> k, double nu) { return g1_closed_form(k, nu); }, py::arg("k"),
        py::arg("nu"));
  m.def(
      "g1_dispersion",
      [](std::vector<double> k, double n, double mm, const std::string& cls, int sign) {
        return g1_dispersion_oracle(k, make_g1(n, mm, cls, sign));
      },
      py::arg("k"), py::arg("n") = 1.0, py::arg("m") = 0.0, py::arg("solution") = "I", py::arg("sign") = 1);
  m.def("g2_closed_form", [](std::vector<double> k) { return g2_closed_form(k); }, py::arg("k"));

  m.def("kspace_operator", [](const WalkSpec& w, std::vector<double> k) { return build_kspace_operator(w, k).eigen(); },
        py::arg("walk"), py::arg("k"));
  m.def("eigenphases", [](const Eigen::MatrixXcd& u) { return eigenphases(from_numpy(u)); }, py::arg("u"));
  m.def("multiset_deviation", [](std::vector<double> a, std::vector<double> b) { return multiset_deviation(a, b); });
  m.def(
      "dispersion_grid",
      [](const WalkSpec& w, std::size_t n, unsigned threads) {
        DispersionGrid g;
        {
          py::gil_scoped_release release;
          g = dispersion_grid(w, n, threads);
        }
        return grid_array(g);
      },
      py::arg("walk"), py::arg("resolution"), py::arg("threads") = 0);
  m.def(
      "grid_coordinates",
      [](std::size_t n) {
        std::vector<double> out;
        for (std::size_t i = 0; i < n; ++i) out.push_back(grid_coordinate(n, i));
        return out;
      },
      py::arg("resolution"));

  m.def("unitarity_residual", [](const WalkSpec& w) { return unitarity_residual(w).residual; });
  m.def("validate_tiling", [](const WalkSpec& w) {
    std::vector<std::string> issues;
    for (const auto& i : validate_tiling(w.tiling(), w.presentation()).issues) {
      issues.push_back(std::string(to_string(i.kind)) + ": " + i.message);
    }
    return issues;
  });

  m.def(
      "evolve",
      [](const WalkSpec& w, std::size_t torus, std::size_t steps, std::vector<std::int64_t> site, std::size_t coset,
         std::size_t coin, bool fourier) {
        if (site.empty()) site.assign(w.dimension(), 0);
        const LatticeState psi = LatticeState::delta(w, torus, site, coset, coin);
        const LatticeState out = fourier ? evolve_fourier(w, psi, steps) : evolve_steps(w, psi, steps);
        std::vector<py::ssize_t> shape(w.dimension(), static_cast<py::ssize_t>(torus));
        shape.push_back(static_cast<py::ssize_t>(w.index()));
        py::array_t<double> probs(shape);
        const auto p = probability_map(out);
        std::copy(p.begin(), p.end(), probs.mutable_data());
        return probs;
      },
      py::arg("walk"), py::arg("torus"), py::arg("steps"), py::arg("site") = std::vector<std::int64_t>{},
      py::arg("coset") = 0, py::arg("coin") = 0, py::arg("fourier") = false,
      "Evolve a delta state and return probabilities of shape (N, ..., N, index).");

  m.def("parse_walk_file", [](const std::string& text) { return parse_walk_file(text).walk; }, py::arg("text"));
  m.def("export_walk_file", [](const WalkSpec& w) { return export_walk_file(w); }, py::arg("walk"));
}
