#include "distlab/experiment.hpp"

#include <chrono>
#include <ctime>
#include <iomanip>
#include <sstream>

#include "distlab/delta_bound.hpp"
#include "distlab/errors.hpp"
#include "distlab/graph_io.hpp"
#include "distlab/lab.hpp"
#include "distlab/tucker.hpp"

namespace distlab {

namespace {

using nlohmann::json;

// "pass" and "fail" are verdicts; the rest mean the run did not apply.
template <typename F>
json guarded(F&& body) {
  try {
    return body();
  } catch (const StructuralViolation& e) {
    return {{"status", "violation"}, {"error", e.what()}};
  } catch (const TruncationError& e) {
    return {{"status", "truncation"}, {"error", e.what()}};
  } catch (const PreconditionError& e) {
    return {{"status", "not-applicable"}, {"error", e.what()}};
  } catch (const BudgetExceeded& e) {
    return {{"status", "budget"}, {"error", e.what()}};
  } catch (const CapExceeded& e) {
    return {{"status", "budget"}, {"error", e.what()}};
  } catch (const Error& e) {
    return {{"status", "error"}, {"error", e.what()}};
  }
}

std::string utc_now() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

json colouring_json(const PartialColouring& c) {
  json out = json::array();
  for (const auto& v : c.to_optional()) out.push_back(v ? json(*v) : json(nullptr));
  return out;
}

}  // namespace

ExperimentSpec experiment_spec_from_json(const json& j) {
  ExperimentSpec spec;
  try {
    for (const auto& inst : j.value("instances", json::array())) {
      spec.instances.push_back(
          {inst.at("family").get<std::string>(), inst.value("params", Params{})});
    }
    spec.seed = j.value("seed", std::uint64_t{0});
    spec.motion_threshold = j.value("motion_threshold", std::size_t{1});
    spec.family_motion_threshold =
        j.value("family_motion_threshold", std::map<std::string, std::size_t>{});
    spec.solver_budget = j.value("budget", spec.solver_budget);
    spec.exact = j.value("exact", true);
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("experiment spec: ") + e.what());
  }
  return spec;
}

json to_json(const ExperimentSpec& spec) {
  json instances = json::array();
  for (const auto& i : spec.instances) instances.push_back({{"family", i.family}, {"params", i.params}});
  return {{"instances", instances},
          {"seed", spec.seed},
          {"motion_threshold", spec.motion_threshold},
          {"family_motion_threshold", spec.family_motion_threshold},
          {"budget", spec.solver_budget},
          {"exact", spec.exact}};
}

json run_instance(const BoundaryRootedGraph& g, const ExperimentSpec& spec,
                  std::size_t motion_threshold) {
  const std::size_t delta = g.graph.max_degree();
  json rec{{"n", g.graph.order()},
           {"m", g.graph.size()},
           {"max_degree", delta},
           {"graph6", emit_graph6(g.graph)},
           {"roots", g.roots},
           {"boundary", g.boundary},
           {"cyclic", shortest_cycle(g.graph).has_value()},
           {"motion_threshold", motion_threshold}};

  rec["symmetry"] = guarded([&]() -> json {
    const auto group = enumerate_automorphisms(g, spec.limits);
    const auto mm = min_motion(g, spec.limits);
    return {{"status", "pass"},
            {"group_order", group.size()},
            {"min_motion", mm ? json(*mm) : json(nullptr)}};
  });

  if (spec.exact) {
    rec["exact"] = guarded([&]() -> json {
      const auto res = distinguishing_number(
          g, static_cast<Colour>(delta + 1), SolverOptions{spec.solver_budget, spec.limits});
      if (!res.k) {
        return {{"status", "fail"},
                {"error", "no distinguishing colouring with at most Δ+1 colours"}};
      }
      return {{"status", "pass"}, {"D", *res.k}, {"within_global_bound", *res.k <= static_cast<Colour>(delta + 1)},
              {"nodes", res.candidates_checked}};
    });
  }

  rec["tucker"] = guarded([&]() -> json {
    tucker::TuckerOptions opts{motion_threshold, spec.limits};
    const auto r = tucker::tucker_colouring(g, opts);
    bool conditions = r.initial_conditions.all();
    std::size_t boundary_c2 = 0;
    for (const auto& s : r.steps) {
      conditions = conditions && s.conditions.all();
      boundary_c2 += s.conditions.c2_involves_boundary ? 1 : 0;
    }
    std::size_t moving_steps = 0;
    for (const auto& s : r.steps) moving_steps += s.tuple_size > 1 ? 1 : 0;
    const bool ok = r.final_distinguishing && r.colouring.colours_used() <= 2 && r.max_generation <= 6;
    return {{"status", ok ? "pass" : "fail"},
            {"steps", r.steps.size()},
            {"moving_steps", moving_steps},
            {"max_generation", r.max_generation},
            {"conditions_every_step", conditions},
            {"boundary_c2_exemptions", boundary_c2},
            {"final_distinguishing", r.final_distinguishing},
            {"final_healthy", r.final_healthy},
            {"root_component_shape", r.root_component_shape},
            {"roots", r.roots.ray},
            {"colouring", colouring_json(r.colouring)}};
  });

  rec["delta"] = guarded([&]() -> json {
    const auto r = delta::delta_minus_one_colouring(g, delta::DeltaOptions{spec.limits});
    const bool ok = r.colours_used <= delta - 1 && r.every_step_domain_distinguishing &&
                    r.final_distinguishing && r.star.holds;
    json out{{"status", ok ? "pass" : "fail"},
             {"steps", r.steps.size()},
             {"colours_used", r.colours_used},
             {"every_step_domain_distinguishing", r.every_step_domain_distinguishing},
             {"final_distinguishing", r.final_distinguishing},
             {"star_property", r.star.holds},
             {"no_zero_next_to_roots", r.no_zero_next_to_roots},
             {"zero_only_in_full_classes", r.zero_only_in_full_classes},
             {"ordering", r.ordering_holds},
             {"roots", r.roots.ray},
             {"colouring", colouring_json(r.colouring)}};
    if (r.star.witness) out["star_witness"] = *r.star.witness;
    return out;
  });
  return rec;
}

json run_experiment(const ExperimentSpec& spec) {
  json instances = json::array();
  std::map<std::string, std::map<std::string, std::size_t>> tally;
  for (std::size_t i = 0; i < spec.instances.size(); ++i) {
    const auto& inst = spec.instances[i];
    const std::uint64_t seed = derive_seed(spec.seed, i);
    const auto it = spec.family_motion_threshold.find(inst.family);
    const std::size_t m = it != spec.family_motion_threshold.end() ? it->second : spec.motion_threshold;
    json rec;
    try {
      rec = run_instance(generate(inst.family, inst.params, seed), spec, m);
    } catch (const Error& e) {
      rec = {{"generation_error", e.what()}};
    }
    rec["id"] = i;
    rec["family"] = inst.family;
    rec["params"] = inst.params;
    rec["seed"] = seed;
    for (const char* key : {"exact", "tucker", "delta"}) {
      if (rec.contains(key)) ++tally[key][rec[key]["status"].get<std::string>()];
    }
    instances.push_back(std::move(rec));
  }
  json report{{"schema", "distlab-report/1"},
              {"generated_at", utc_now()},
              {"spec", to_json(spec)},
              {"instances", instances},
              {"summary", tally}};
  report["passed"] = report_passes(report);
  return report;
}

bool report_passes(const json& report) {
  for (const auto& rec : report.at("instances")) {
    if (rec.contains("generation_error")) return false;
    for (const char* key : {"symmetry", "exact", "tucker", "delta"}) {
      if (!rec.contains(key)) continue;
      const auto status = rec[key]["status"].get<std::string>();
      if (status == "fail" || status == "violation" || status == "error") return false;
    }
  }
  return true;
}

std::string summarize(const json& report) {
  std::ostringstream out;
  out << "instances: " << report.at("instances").size() << "\n";
  for (const auto& rec : report.at("instances")) {
    out << "  #" << rec.at("id").get<std::size_t>() << " " << rec.at("family").get<std::string>();
    out << rec.at("params").dump();
    if (rec.contains("generation_error")) {
      out << "  generation error: " << rec["generation_error"].get<std::string>() << "\n";
      continue;
    }
    out << " n=" << rec["n"] << " Δ=" << rec["max_degree"];
    const auto& sym = rec["symmetry"];
    if (sym["status"] == "pass") {
      out << " |Aut|=" << sym["group_order"] << " motion="
          << (sym["min_motion"].is_null() ? std::string("inf") : sym["min_motion"].dump());
    }
    if (rec.contains("exact")) {
      out << " D=" << (rec["exact"].contains("D") ? rec["exact"]["D"].dump()
                                                   : rec["exact"]["status"].get<std::string>());
    }
    out << " tucker=" << rec["tucker"]["status"].get<std::string>();
    out << " delta=" << rec["delta"]["status"].get<std::string>() << "\n";
  }
  for (const auto& [key, counts] : report.at("summary").items()) {
    out << key << ":";
    for (const auto& [status, n] : counts.items()) out << " " << status << "=" << n.get<std::size_t>();
    out << "\n";
  }
  out << "overall: " << (report.at("passed").get<bool>() ? "PASS" : "FAIL") << "\n";
  return out.str();
}

}  // namespace distlab
