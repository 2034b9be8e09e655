#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "json.hpp"

#include "distlab/delta_bound.hpp"
#include "distlab/errors.hpp"
#include "distlab/experiment.hpp"
#include "distlab/generators.hpp"
#include "distlab/graph_io.hpp"
#include "distlab/lab.hpp"
#include "distlab/tucker.hpp"

namespace py = pybind11;
using nlohmann::json;
using namespace distlab;

// Graphs and results cross the boundary as JSON text; the Python package decodes them.
namespace {

BoundaryRootedGraph graph_arg(const std::string& text) { return parse_graph_text(text); }

json colouring_json(const PartialColouring& c) {
  json out = json::array();
  for (const auto& v : c.to_optional()) out.push_back(v ? json(*v) : json(nullptr));
  return out;
}

PartialColouring colouring_arg(const json& j, std::size_t n) {
  if (!j.is_array() || j.size() != n) {
    throw InvalidArgument("colouring must be a list with one entry per vertex");
  }
  std::vector<std::optional<Colour>> values;
  Colour k = 1;
  for (const auto& x : j) {
    if (x.is_null()) {
      values.emplace_back();
    } else {
      values.emplace_back(x.get<Colour>());
      k = std::max(k, static_cast<Colour>(*values.back() + 1));
    }
  }
  return PartialColouring::from_optional(values, k);
}

std::string automorphisms(const std::string& graph, std::size_t cap) {
  const auto g = graph_arg(graph);
  SearchLimits limits;
  limits.cap = cap;
  const auto group = enumerate_automorphisms(g, limits);
  const auto mm = min_motion(g, limits);
  json elems = json::array();
  for (const auto& a : group.elements) elems.push_back(a.image);
  return json{{"order", group.size()}, {"elements", elems},
              {"min_motion", mm ? json(*mm) : json(nullptr)}}.dump();
}

std::string dnumber(const std::string& graph, int k_max, std::size_t budget) {
  const auto g = graph_arg(graph);
  const Colour k = k_max > 0 ? k_max : static_cast<Colour>(g.graph.max_degree() + 1);
  SolverOptions opts;
  opts.budget = budget;
  const auto r = distinguishing_number(g, k, opts);
  return json{{"D", r.k ? json(*r.k) : json(nullptr)},
              {"k_max", k},
              {"group_order", r.group_order},
              {"colouring", r.colouring ? colouring_json(*r.colouring) : json(nullptr)}}
      .dump();
}

std::string is_distinguishing_relative(const std::string& graph, const std::string& colouring) {
  const auto g = graph_arg(graph);
  const auto c = colouring_arg(json::parse(colouring), g.graph.order());
  const auto stab = stabiliser(g, c);
  return json{{"stabiliser_order", stab.size()},
              {"domain_preserving", stab.is_group},
              {"domain_distinguishing", fixes_pointwise(stab, c.domain())},
              {"distinguishing", c.is_total() && stab.size() == 1}}
      .dump();
}

std::string run_tucker(const std::string& graph, std::size_t motion_threshold) {
  const auto g = graph_arg(graph);
  tucker::TuckerOptions opts;
  opts.motion_threshold = motion_threshold;
  const auto r = tucker::tucker_colouring(g, opts);
  json steps = json::array();
  for (const auto& s : r.steps) steps.push_back(tucker::to_json(s));
  return json{{"roots", r.roots.ray},
              {"colouring", colouring_json(r.colouring)},
              {"steps", steps},
              {"max_generation", r.max_generation},
              {"final_distinguishing", r.final_distinguishing},
              {"final_healthy", r.final_healthy}}
      .dump();
}

std::string run_delta(const std::string& graph) {
  const auto r = delta::delta_minus_one_colouring(graph_arg(graph));
  json steps = json::array();
  for (const auto& s : r.steps) steps.push_back(delta::to_json(s));
  return json{{"roots", r.roots.ray},
              {"colouring", colouring_json(r.colouring)},
              {"steps", steps},
              {"colours_used", r.colours_used},
              {"every_step_domain_distinguishing", r.every_step_domain_distinguishing},
              {"final_distinguishing", r.final_distinguishing},
              {"star_property", r.star.holds}}
      .dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "distlab native core";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<InvalidArgument>(m, "InvalidArgument", base.ptr());
  py::register_exception<PreconditionError>(m, "PreconditionError", base.ptr());
  py::register_exception<CapExceeded>(m, "CapExceeded", base.ptr());
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", base.ptr());
  py::register_exception<TruncationError>(m, "TruncationError", base.ptr());
  py::register_exception<StructuralViolation>(m, "StructuralViolation", base.ptr());

  m.def("parse_graph6", [](const std::string& t) { return to_json(BoundaryRootedGraph(parse_graph6(t))).dump(); });
  m.def("emit_graph6", [](const std::string& g) { return emit_graph6(graph_arg(g).graph); });
  m.def("to_dot", [](const std::string& g) {
    const auto brg = graph_arg(g);
    DotOptions opts;
    opts.roots = brg.roots;
    opts.boundary = brg.boundary;
    return to_dot(brg.graph, opts);
  });
  m.def("generate", [](const std::string& family, const Params& params, std::uint64_t seed) {
    return to_json(generate(family, params, seed)).dump();
  }, py::arg("family"), py::arg("params"), py::arg("seed") = 0);
  m.def("family_names", &family_names);
  m.def("automorphisms", &automorphisms, py::arg("graph"), py::arg("cap") = 1'000'000);
  m.def("distinguishing_number", &dnumber, py::arg("graph"), py::arg("k_max") = 0,
        py::arg("budget") = 100'000'000);
  m.def("check_colouring", &is_distinguishing_relative);
  m.def("tucker_colouring", &run_tucker, py::arg("graph"), py::arg("motion_threshold") = 1);
  m.def("delta_minus_one_colouring", &run_delta);
  m.def("run_experiment", [](const std::string& spec) {
    return run_experiment(experiment_spec_from_json(json::parse(spec))).dump();
  });
}
