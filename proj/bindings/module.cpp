#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "perico/euclid.hpp"
#include "perico/hyp.hpp"
#include "perico/io.hpp"
#include "perico/verify.hpp"

namespace py = pybind11;

namespace {

py::dict report_dict(const perico::colouring::PipelineReport& r) {
  py::dict d;
  d["index"] = r.index;
  d["palette"] = r.palette;
  d["strategy"] = r.strategy;
  d["reduction_steps"] = r.reduction_steps;
  if (r.genus >= 0) {
    d["genus"] = r.genus;
    d["ringel_youngs"] = r.ringel_youngs;
  }
  d["thomassen_threshold"] =
      py::module_::import("builtins").attr("int")(r.thomassen_threshold.str());
  d["meets_thomassen"] = r.meets_thomassen;
  return d;
}

}  // namespace

PYBIND11_MODULE(_perico, m) {
  m.doc() = "Periodic colourings of quasi-transitive planar graphs";

  py::register_exception<perico::ArgumentError>(m, "ArgumentError", PyExc_ValueError);
  py::register_exception<perico::ResourceError>(m, "ResourceError", PyExc_RuntimeError);

  using perico::graph::PeriodicGraph;
  py::class_<PeriodicGraph>(m, "PeriodicGraph")
      .def_property_readonly("orbits",
                             [](const PeriodicGraph& pg) { return pg.orbit_count; })
      .def_property_readonly("kind", [](const PeriodicGraph& pg) {
        return pg.kind == perico::graph::GroupKind::EuclideanLattice
                   ? "euclidean-lattice"
                   : "fuchsian";
      });

  m.def("example_names", &perico::io::example_names);
  m.def("example", &perico::io::example_graph, py::arg("name"));
  m.def("parse", &perico::io::parse_periodic_graph, py::arg("text"));
  m.def("serialize",
        [](const PeriodicGraph& pg) { return perico::io::serialize(pg); },
        py::arg("graph"));
  m.def("estimate_ends",
        [](const PeriodicGraph& pg, int r, int R) {
          return perico::graph::estimate_ends(pg, r, R);
        },
        py::arg("graph"), py::arg("r") = 2, py::arg("R") = 4);
  m.def("colour_pipeline",
        [](const PeriodicGraph& pg, int verify_radius) {
          auto [pc, report] =
              pg.kind == perico::graph::GroupKind::EuclideanLattice
                  ? perico::colouring::euclid_pipeline(pg)
                  : perico::colouring::hyp_pipeline(pg);
          py::dict d = report_dict(report);
          d["proper"] = perico::verify::check_proper(pc, pg, verify_radius).pass;
          d["colouring"] = perico::io::serialize(pc);
          return d;
        },
        py::arg("graph"), py::arg("verify_radius") = 4);
  m.def("edge_colour_pipeline",
        [](const PeriodicGraph& pg) {
          perico::linegraph::EdgeColouring ec =
              perico::linegraph::periodic_edge_colouring(pg);
          py::dict d = report_dict(ec.report);
          d["line_graph"] = perico::io::serialize(ec.line.lg);
          d["colouring"] = perico::io::serialize(ec.pc);
          return d;
        },
        py::arg("graph"));
  m.def("render_svg",
        [](const PeriodicGraph& pg, int radius, const std::string& mode) {
          perico::io::RenderMode rm;
          if (mode == "euclidean")
            rm = perico::io::RenderMode::Euclidean;
          else if (mode == "poincare")
            rm = perico::io::RenderMode::Poincare;
          else
            throw perico::ArgumentError("mode must be 'euclidean' or 'poincare'");
          return perico::io::render_svg(pg, nullptr, radius, rm);
        },
        py::arg("graph"), py::arg("radius") = 4, py::arg("mode") = "euclidean");

  auto hyp = m.def_submodule("hyp");
  using namespace perico::hyp;

  py::class_<MoebiusMatrix>(hyp, "MoebiusMatrix")
      .def(py::init([](double a, double b, double c, double d) {
             return MoebiusMatrix{a, b, c, d, ""};
           }),
           py::arg("a"), py::arg("b"), py::arg("c"), py::arg("d"))
      .def_readonly("a", &MoebiusMatrix::a)
      .def_readonly("b", &MoebiusMatrix::b)
      .def_readonly("c", &MoebiusMatrix::c)
      .def_readonly("d", &MoebiusMatrix::d)
      .def("trace", &MoebiusMatrix::trace);

  py::enum_<IsometryClass>(hyp, "IsometryClass")
      .value("ELLIPTIC", IsometryClass::Elliptic)
      .value("PARABOLIC", IsometryClass::Parabolic)
      .value("HYPERBOLIC", IsometryClass::Hyperbolic);

  hyp.def("classify_and_length", [](const MoebiusMatrix& m) {
    ClassifyResult r = classify_and_length(m);
    return py::make_tuple(r.cls, r.length);
  });
  hyp.def("hyperbolic_distance", &hyperbolic_distance);
  hyp.def("riemann_hurwitz_genus",
          [](int genus, const std::vector<int>& periods, long long index) {
            return riemann_hurwitz_genus({genus, periods}, index);
          },
          py::arg("genus"), py::arg("periods"), py::arg("index"));
  hyp.def("colour_budget", [](long long genus) {
    ColourBudget b = colour_budget(genus);
    py::object threshold =
        py::module_::import("builtins").attr("int")(b.thomassen_threshold.str());
    return py::make_tuple(b.ringel_youngs, threshold);
  });
}
