#include "doctest.h"

#include "distlab/experiment.hpp"

using namespace distlab;

namespace {

nlohmann::json strip_time(nlohmann::json j) {
  j.erase("generated_at");
  return j;
}

ExperimentSpec small_spec() {
  return experiment_spec_from_json(nlohmann::json::parse(R"({
    "instances": [
      {"family": "cycle", "params": [5]},
      {"family": "hairy_cycle", "params": [4, 2, 3]},
      {"family": "random_bounded_degree", "params": [12, 3]},
      {"family": "delta_tightness", "params": [4, 2]}
    ],
    "seed": 17,
    "motion_threshold": 1,
    "family_motion_threshold": {"hairy_cycle": 6}
  })"));
}

}  // namespace

TEST_SUITE("experiment") {
  TEST_CASE("spec round trip") {
    const auto spec = small_spec();
    CHECK(spec.instances.size() == 4);
    CHECK(spec.seed == 17);
    CHECK(spec.family_motion_threshold.at("hairy_cycle") == 6);
    const auto again = experiment_spec_from_json(to_json(spec));
    CHECK(to_json(again) == to_json(spec));
  }

  TEST_CASE("reports are deterministic") {
    const auto spec = small_spec();
    const auto a = run_experiment(spec);
    const auto b = run_experiment(spec);
    CHECK(a.contains("generated_at"));
    CHECK(strip_time(a).dump() == strip_time(b).dump());
    CHECK(a.at("schema") == "distlab-report/1");
    CHECK(a.at("instances").size() == 4);
    CHECK(report_passes(a));
    CHECK_FALSE(summarize(a).empty());
  }

  TEST_CASE("instance sections") {
    const auto report = run_experiment(small_spec());
    const auto& c5 = report.at("instances").at(0);
    CHECK(c5.at("exact").at("status") == "pass");
    CHECK(c5.at("exact").at("D") == 3);
    // No boundary, so no ray to build the roots from.
    CHECK(c5.at("tucker").at("status") == "truncation");
    CHECK(c5.at("delta").at("status") == "not-applicable");
    const auto& hairy = report.at("instances").at(1);
    CHECK(hairy.at("tucker").at("status") == "pass");
  }

  TEST_CASE("empty spec") {
    const auto report = run_experiment(experiment_spec_from_json(nlohmann::json::parse(R"({"instances": []})")));
    CHECK(report.at("instances").empty());
    CHECK(report_passes(report));
  }

  TEST_CASE("bad spec") {
    CHECK_THROWS(experiment_spec_from_json(nlohmann::json::parse(R"({"instances": 3})")));
  }
}
