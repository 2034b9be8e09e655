#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "distlab/delta_bound.hpp"
#include "distlab/errors.hpp"
#include "distlab/experiment.hpp"
#include "distlab/generators.hpp"
#include "distlab/graph_io.hpp"
#include "distlab/lab.hpp"
#include "distlab/tucker.hpp"

using namespace distlab;
using nlohmann::json;

namespace {

struct Globals {
  std::uint64_t seed = 0;
  std::size_t budget = 100'000'000;
  std::size_t motion_threshold = 1;
  std::string dot_out;
  std::string json_out;
  std::string graph6;
  std::string input;
};

std::string read_all(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), {}};
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write '" + path + "'");
  out << text;
}

BoundaryRootedGraph load_input(const Globals& g) {
  if (!g.graph6.empty()) return BoundaryRootedGraph(parse_graph6(g.graph6));
  if (g.input.empty()) throw InvalidArgument("no input graph: pass a file or --graph6");
  return parse_graph_text(read_all(g.input));
}

// A JSON value given inline or as a path to a file holding it.
json json_argument(const std::string& text) {
  std::ifstream probe(text);
  return json::parse(probe ? read_all(text) : text);
}

PartialColouring colouring_from_json(const json& j, std::size_t n) {
  if (!j.is_array() || j.size() != n) {
    throw InvalidArgument("colouring must be an array with one entry per vertex");
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

json colouring_json(const PartialColouring& c) {
  json out = json::array();
  for (const auto& v : c.to_optional()) out.push_back(v ? json(*v) : json(nullptr));
  return out;
}

void maybe_dot(const Globals& g, const BoundaryRootedGraph& brg, const PartialColouring* c) {
  if (g.dot_out.empty()) return;
  DotOptions opts;
  opts.colouring = c;
  opts.roots = brg.roots;
  opts.boundary = brg.boundary;
  write_file(g.dot_out, to_dot(brg.graph, opts));
}

void maybe_json(const Globals& g, const json& j) {
  if (!g.json_out.empty()) write_file(g.json_out, j.dump(2) + "\n");
}

std::string join(const VertexSet& s) {
  std::ostringstream out;
  for (std::size_t i = 0; i < s.size(); ++i) out << (i ? " " : "") << s[i];
  return out.str();
}

int cmd_gen(const Globals& g, const std::string& family, const std::vector<std::int64_t>& params,
            const std::string& format) {
  const auto brg = generate(family, params, g.seed);
  if (format == "graph6") {
    std::cout << emit_graph6(brg.graph) << "\n";
  } else {
    std::cout << to_json(brg).dump() << "\n";
  }
  maybe_json(g, to_json(brg));
  maybe_dot(g, brg, nullptr);
  return 0;
}

int cmd_autos(const Globals& g, bool list) {
  const auto brg = load_input(g);
  const auto group = enumerate_automorphisms(brg);
  const auto mm = min_motion(brg);
  VertexSet all(brg.graph.order());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<Vertex>(i);
  const auto orb = orbits(group, all);
  std::cout << "order " << group.size() << "\n";
  std::cout << "min_motion " << (mm ? std::to_string(*mm) : "inf") << "\n";
  std::cout << "orbits " << orb.size() << "\n";
  for (const auto& o : orb) {
    if (o.size() > 1) std::cout << "  {" << join(o) << "}\n";
  }
  json out{{"group_order", group.size()},
           {"min_motion", mm ? json(*mm) : json(nullptr)},
           {"orbits", orb}};
  if (list) {
    json elems = json::array();
    for (const auto& a : group.elements) elems.push_back(a.image);
    out["elements"] = elems;
    for (const auto& a : group.elements) std::cout << json(a.image).dump() << "\n";
  }
  maybe_json(g, out);
  return 0;
}

int cmd_dnumber(const Globals& g, int kmax) {
  const auto brg = load_input(g);
  const Colour k = kmax > 0 ? kmax : static_cast<Colour>(brg.graph.max_degree() + 1);
  const auto res = distinguishing_number(brg, k, SolverOptions{g.budget});
  json out{{"group_order", res.group_order}, {"k_max", k}, {"nodes", res.candidates_checked}};
  if (res.k) {
    std::cout << "D = " << *res.k << " (|Aut| = " << res.group_order << ")\n";
    out["D"] = *res.k;
    out["colouring"] = colouring_json(*res.colouring);
    maybe_dot(g, brg, &*res.colouring);
  } else {
    std::cout << "D > " << k << "\n";
    out["D"] = nullptr;
  }
  maybe_json(g, out);
  return res.k ? 0 : 1;
}

int cmd_verify(const Globals& g, const std::string& colouring_arg, const std::string& set_arg) {
  const auto brg = load_input(g);
  const auto c = colouring_from_json(json_argument(colouring_arg), brg.graph.order());
  const auto stab = stabiliser(brg, c);
  json out{{"stabiliser_order", stab.size()}, {"domain_preserving", stab.is_group}};
  bool ok;
  VertexSet checked;
  if (!set_arg.empty()) {
    const VertexSet s = make_vertex_set(json_argument(set_arg).get<std::vector<Vertex>>());
    checked = s;
    ok = fixes_pointwise(stab, s);
    out["S_distinguishing"] = ok;
    std::cout << "S-distinguishing: " << (ok ? "yes" : "no") << "\n";
  } else if (c.is_total()) {
    checked = c.domain();
    ok = stab.size() == 1;
    out["distinguishing"] = ok;
    std::cout << "distinguishing: " << (ok ? "yes" : "no") << " (stabiliser order "
              << stab.size() << ")\n";
  } else {
    checked = c.domain();
    ok = fixes_pointwise(stab, c.domain());
    out["domain_distinguishing"] = ok;
    std::cout << "domain distinguishing: " << (ok ? "yes" : "no") << "\n";
  }
  if (!ok) {
    // First stabiliser element that moves a vertex of the checked set.
    const auto moving =
        std::find_if(stab.elements.begin(), stab.elements.end(), [&](const Automorphism& a) {
          return std::any_of(checked.begin(), checked.end(), [&](Vertex v) { return a(v) != v; });
        });
    out["witness"] = moving->image;
    std::cout << "witness " << json(moving->image).dump() << "\n";
  }
  maybe_json(g, out);
  maybe_dot(g, brg, &c);
  return ok ? 0 : 1;
}

// Trace files are JSON lines: one record per step, then a "result" record.
void write_trace(const Globals& g, const std::vector<json>& lines) {
  if (g.json_out.empty()) return;
  std::string text;
  for (const auto& l : lines) text += l.dump() + "\n";
  write_file(g.json_out, text);
}

// One DOT file per chain element: step_001.dot is the initial colouring.
void dot_steps(const std::string& dir, const BoundaryRootedGraph& brg,
               const std::vector<PartialColouring>& chain) {
  std::filesystem::create_directories(dir);
  for (std::size_t i = 0; i < chain.size(); ++i) {
    DotOptions opts;
    opts.colouring = &chain[i];
    opts.roots = brg.roots;
    opts.boundary = brg.boundary;
    opts.name = "step" + std::to_string(i + 1);
    char name[32];
    std::snprintf(name, sizeof name, "step_%03zu.dot", i + 1);
    write_file((std::filesystem::path(dir) / name).string(), to_dot(brg.graph, opts));
  }
}

int cmd_tucker(const Globals& g, const std::string& steps_dir) {
  const auto brg = load_input(g);
  const auto r = tucker::tucker_colouring(brg, {g.motion_threshold});
  std::vector<json> lines;
  for (const auto& s : r.steps) lines.push_back(tucker::to_json(s));
  bool conditions = r.initial_conditions.all();
  for (const auto& s : r.steps) conditions = conditions && s.conditions.all();
  const bool ok = r.final_distinguishing && r.final_healthy && conditions &&
                  r.colouring.colours_used() <= 2 && r.max_generation <= 6;
  lines.push_back({{"result", ok ? "pass" : "fail"},
                   {"roots", r.roots.ray},
                   {"steps", r.steps.size()},
                   {"max_generation", r.max_generation},
                   {"conditions_every_step", conditions},
                   {"colouring", colouring_json(r.colouring)}});
  write_trace(g, lines);
  maybe_dot(g, r.working, &r.colouring);
  if (!steps_dir.empty()) dot_steps(steps_dir, r.working, r.chain);
  std::cout << "R = " << join(r.roots.ray) << "\n"
            << "steps " << r.steps.size() << ", max generation " << r.max_generation
            << ", C1-C7 every step: " << (conditions ? "yes" : "no") << "\n"
            << "final colouring " << (r.final_distinguishing ? "distinguishing" : "NOT distinguishing")
            << " relative to R u B\n"
            << colouring_json(r.colouring).dump() << "\n";
  return ok ? 0 : 1;
}

int cmd_deltabound(const Globals& g) {
  const auto brg = load_input(g);
  const auto r = delta::delta_minus_one_colouring(brg);
  std::vector<json> lines;
  for (const auto& s : r.steps) lines.push_back(delta::to_json(s));
  const bool ok = r.colours_used + 1 <= r.max_degree && r.every_step_domain_distinguishing &&
                  r.final_distinguishing && r.star.holds;
  json result{{"result", ok ? "pass" : "fail"},
              {"roots", r.roots.ray},
              {"colours_used", r.colours_used},
              {"star_property", r.star.holds},
              {"ordering", r.ordering_holds},
              {"no_zero_next_to_roots", r.no_zero_next_to_roots},
              {"colouring", colouring_json(r.colouring)}};
  if (r.star.witness) result["star_witness"] = *r.star.witness;
  lines.push_back(result);
  write_trace(g, lines);
  maybe_dot(g, r.working, &r.colouring);
  std::cout << "R = " << join(r.roots.ray) << "\n"
            << "colours used " << r.colours_used << " (Δ−1 = " << r.max_degree - 1 << ")\n"
            << "every step domain distinguishing: " << (r.every_step_domain_distinguishing ? "yes" : "no")
            << "\nstar property: " << (r.star.holds ? "yes" : "no") << "\n"
            << colouring_json(r.colouring).dump() << "\n";
  return ok ? 0 : 1;
}

int cmd_chain_check(const Globals& g, const std::string& chain_arg) {
  const auto brg = load_input(g);
  const json j = json_argument(chain_arg);
  std::vector<PartialColouring> chain;
  std::vector<VertexSet> sets;
  for (const auto& c : j.at("chain")) chain.push_back(colouring_from_json(c, brg.graph.order()));
  for (const auto& s : j.at("sets")) sets.push_back(make_vertex_set(s.get<std::vector<Vertex>>()));
  // Colourings may disagree on the palette size; widen to the largest.
  Colour k = 1;
  for (const auto& c : chain) k = std::max(k, c.colour_count());
  for (auto& c : chain) c = PartialColouring::from_optional(c.to_optional(), k);
  const auto rep = verify_chain(brg, chain, sets);
  json out{{"ok", rep.ok},
           {"increasing", rep.increasing},
           {"covers_vertices", rep.covers_vertices},
           {"limit_distinguishing", rep.limit_distinguishing},
           {"first_failure", rep.first_failure ? json(*rep.first_failure) : json(nullptr)}};
  std::cout << out.dump() << "\n";
  maybe_json(g, out);
  return rep.ok && rep.limit_distinguishing ? 0 : 1;
}

int cmd_report(const Globals& g, const std::string& spec_arg, bool seed_given,
               bool threshold_given, bool budget_given) {
  ExperimentSpec spec = experiment_spec_from_json(json_argument(spec_arg));
  if (seed_given) spec.seed = g.seed;
  if (threshold_given) spec.motion_threshold = g.motion_threshold;
  if (budget_given) spec.solver_budget = g.budget;
  const json report = run_experiment(spec);
  std::cout << summarize(report);
  maybe_json(g, report);
  return report_passes(report) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"distlab: distinguishing colourings on boundary-rooted graphs"};
  app.require_subcommand(1);
  Globals g;
  auto* seed_opt = app.add_option("--seed", g.seed, "PRNG seed")->capture_default_str();
  auto* budget_opt = app.add_option("--budget", g.budget, "search node budget")->capture_default_str();
  auto* motion_opt =
      app.add_option("--motion-threshold", g.motion_threshold, "minimum motion required by tucker")
          ->capture_default_str();
  app.add_option("--dot-out", g.dot_out, "write Graphviz DOT here");
  app.add_option("--json-out", g.json_out, "write JSON (or JSON lines for traces) here");
  app.add_option("--graph6", g.graph6, "inline graph6 input instead of a file");
  for (auto* opt : app.get_options()) opt->configurable(false);

  auto with_input = [&](CLI::App* sub) {
    sub->fallthrough();
    sub->add_option("input", g.input, "graph file (graph6 or JSON; '-' for stdin)");
    return sub;
  };

  std::string family, format = "json";
  std::vector<std::int64_t> params;
  auto* gen = app.add_subcommand("gen", "generate an instance of a graph family");
  gen->fallthrough();
  gen->add_option("family", family, "family name")->required();
  gen->add_option("params", params, "family parameters");
  gen->add_option("--format", format, "json or graph6")->check(CLI::IsMember({"json", "graph6"}));

  bool list = false;
  auto* autos = with_input(app.add_subcommand("autos", "automorphism group fixing R and B"));
  autos->add_flag("--list", list, "print every automorphism");

  int kmax = 0;
  auto* dnum = with_input(app.add_subcommand("dnumber", "exact distinguishing number"));
  dnum->add_option("--kmax", kmax, "largest palette to try (default Δ+1)");

  std::string colouring_arg, set_arg;
  auto* verify = with_input(app.add_subcommand("verify", "check a colouring"));
  verify->add_option("--colouring", colouring_arg, "JSON array (null = uncoloured) or a file")
      ->required();
  verify->add_option("--set", set_arg, "check S-distinguishing for this JSON vertex list");

  auto* tucker_cmd = with_input(app.add_subcommand("tucker", "two-colouring construction (Δ ≤ 5)"));
  std::string steps_dir;
  tucker_cmd->add_option("--dot-steps", steps_dir, "directory for one DOT snapshot per step");
  auto* delta_cmd = with_input(app.add_subcommand("deltabound", "(Δ−1)-colouring construction"));

  std::string chain_arg;
  auto* chain = with_input(app.add_subcommand("chain-check", "verify an increasing chain"));
  chain->add_option("--chain", chain_arg, "JSON {chain, sets} or a file")->required();

  std::string spec_arg;
  auto* report = app.add_subcommand("report", "batch experiment over generated families");
  report->fallthrough();
  report->add_option("spec", spec_arg, "experiment spec JSON or a file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*gen) return cmd_gen(g, family, params, format);
    if (*autos) return cmd_autos(g, list);
    if (*dnum) return cmd_dnumber(g, kmax);
    if (*verify) return cmd_verify(g, colouring_arg, set_arg);
    if (*tucker_cmd) return cmd_tucker(g, steps_dir);
    if (*delta_cmd) return cmd_deltabound(g);
    if (*chain) return cmd_chain_check(g, chain_arg);
    if (*report) {
      return cmd_report(g, spec_arg, seed_opt->count() > 0, motion_opt->count() > 0,
                        budget_opt->count() > 0);
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error at byte " << e.offset() << ": " << e.what() << "\n";
    return 2;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
