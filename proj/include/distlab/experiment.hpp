#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "distlab/generators.hpp"
#include "distlab/symmetry.hpp"

namespace distlab {

struct InstanceSpec {
  std::string family;
  Params params;
};

struct ExperimentSpec {
  std::vector<InstanceSpec> instances;
  std::uint64_t seed = 0;
  std::size_t motion_threshold = 1;
  // Per-family override of motion_threshold.
  std::map<std::string, std::size_t> family_motion_threshold;
  std::size_t solver_budget = 100'000'000;
  bool exact = true;
  SearchLimits limits = {};
};

// {"instances": [{"family": ..., "params": [...]}, ...], "seed": ..., "motion_threshold": ...,
//  "family_motion_threshold": {...}, "budget": ..., "exact": bool}
ExperimentSpec experiment_spec_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ExperimentSpec& spec);

// Runs every instance; per-instance errors land in the report. The only
// run-dependent field is "generated_at".
nlohmann::json run_experiment(const ExperimentSpec& spec);

// Per-instance record with the same fields as run_experiment uses.
nlohmann::json run_instance(const BoundaryRootedGraph& g, const ExperimentSpec& spec,
                            std::size_t motion_threshold);

std::string summarize(const nlohmann::json& report);

// True when no instance recorded a failed verification.
bool report_passes(const nlohmann::json& report);

}  // namespace distlab
