#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "distlab/colouring.hpp"
#include "distlab/graph.hpp"
#include "distlab/root_structure.hpp"
#include "distlab/symmetry.hpp"

// Two-colouring construction for graphs of maximum degree at most 5, run on a
// boundary-rooted truncation. Every predicate below reads "R" as g.roots and treats
// g.boundary as the truncation frontier: a monochromatic component containing a
// boundary vertex stands in for an infinite one.
namespace distlab::tucker {

// Orbit of a charted vertex under the stabiliser of a domain-preserving colouring.
struct MovingTuple {
  VertexSet members;
  std::size_t size() const noexcept { return members.size(); }
  friend bool operator==(const MovingTuple&, const MovingTuple&) = default;
};

// Sorted by source vertex.
using Bijection = std::vector<std::pair<Vertex, Vertex>>;
Vertex apply(const Bijection& f, Vertex v);
Bijection compose(const Bijection& second, const Bijection& first);  // second ∘ first

enum class HealthReason { kNotColourZero, kMeetsRoots, kFiniteAndSealed, kDegreeFourInside, kUnhealthy };
const char* to_string(HealthReason r);

struct HealthVerdict {
  VertexSet component;
  bool healthy = false;
  HealthReason reason = HealthReason::kUnhealthy;
};

// Vertices outside R that are coloured or have a neighbour in R.
VertexSet charted_vertices(const BoundaryRootedGraph& g, const PartialColouring& c);

// Orbits of charted vertices under the stabiliser of c. Throws PreconditionError
// when c is not domain preserving.
std::vector<MovingTuple> moving_tuples(const BoundaryRootedGraph& g, const PartialColouring& c,
                                       SearchLimits limits = {});
std::vector<MovingTuple> moving_tuples(const BoundaryRootedGraph& g, const PartialColouring& c,
                                       const AutomorphismSet& stab);

// Vertices outside R adjacent to some, but not all, members of the tuple.
VertexSet uncommon_neighbours(const BoundaryRootedGraph& g, const MovingTuple& a);

enum class BipartiteShape { kEmpty, kComplete, kMatching, kSixCycle };

struct SyncLink {
  BipartiteShape shape = BipartiteShape::kEmpty;
  std::optional<Bijection> bijection;  // set for kMatching and kSixCycle
};

// Classifies the edges between two tuples of size at most 3: a matching yields the
// partner map, a 6-cycle the antipodal map. Any other shape throws StructuralViolation.
SyncLink classify_link(const Graph& g, const MovingTuple& a, const MovingTuple& b);
std::optional<Bijection> sync_bijection(const Graph& g, const MovingTuple& a,
                                        const MovingTuple& b);

struct SyncClasses {
  std::vector<std::size_t> class_of;             // tuple index -> class id
  std::vector<std::vector<std::size_t>> classes;  // class id -> tuple indices, ascending
  // Composed bijection from each tuple to the first tuple of its class.
  std::vector<Bijection> to_representative;
};

// Equivalence classes of "has an uncommon neighbour in", closed transitively.
// All tuples must have at most 3 members.
SyncClasses sync_classes(const BoundaryRootedGraph& g, const std::vector<MovingTuple>& tuples);

// For every γ in stab: γ|_B == f ∘ γ|_A ∘ f⁻¹.
bool conjugation_holds(const AutomorphismSet& stab, const Bijection& f);

VertexSet monochromatic_component(const Graph& g, const PartialColouring& c, Vertex v);
HealthVerdict classify_health(const BoundaryRootedGraph& g, const PartialColouring& c,
                              const VertexSet& component);
std::vector<HealthVerdict> all_components(const BoundaryRootedGraph& g, const PartialColouring& c);
VertexSet symptoms(const BoundaryRootedGraph& g, const PartialColouring& c);
bool is_healthy(const BoundaryRootedGraph& g, const PartialColouring& c);

struct TuckerState {
  std::size_t step = 1;
  VertexSet s;
  PartialColouring colouring;
  VertexSet worklist;
  // Generation of every vertex that entered the worklist in the latest step.
  std::vector<std::pair<Vertex, int>> generation;
};

struct ConditionReport {
  std::array<bool, 7> holds{};
  std::string c2_detail;
  bool c2_involves_boundary = false;
  bool all() const;
  // Name of the first failing condition ("C1".."C7"), empty when all hold.
  std::string first_failure() const;
};

struct CaseOutcome {
  std::string label;  // "1A", "1B", "2A", "2B", "2C"
  std::vector<std::pair<Vertex, Colour>> assignments;
};

struct StepRecord {
  std::size_t index = 0;
  Vertex x = -1;
  std::size_t tuple_size = 0;
  std::string branch;
  std::optional<Vertex> witness;  // y
  std::vector<std::string> cases;
  std::vector<Vertex> processed;  // order in which worklist vertices were handled
  std::vector<std::pair<Vertex, Colour>> newly_coloured;
  std::vector<std::pair<Vertex, int>> generation;
  int max_generation = 0;
  std::size_t link_audit_pairs = 0;
  ConditionReport conditions;
};

struct TuckerOptions {
  std::size_t motion_threshold = 1;
  SearchLimits limits = {};
};

// The procedure bound to one instance. The working graph fixes R ∪ B ∪ (input roots).
class TuckerRun {
 public:
  TuckerRun(const BoundaryRootedGraph& input, TuckerOptions options = {});

  const RootStructure& root_structure() const { return roots_; }
  // Roots = constructed R; boundary = input boundary plus any input roots.
  const BoundaryRootedGraph& working() const { return working_; }

  TuckerState initial_state() const;
  ConditionReport check_conditions(const TuckerState& state) const;

  // One induction step; throws TruncationError / StructuralViolation as documented.
  std::pair<TuckerState, StepRecord> step(const TuckerState& state) const;

  // Case table for one recursion iteration, after neighbours of R were given colour 1.
  CaseOutcome apply_case_table(PartialColouring& c, const MovingTuple& a_tuple, Vertex a) const;

 private:
  void run_worklist(PartialColouring& c, const MovingTuple& y_tuple, Vertex y,
                    StepRecord& record) const;

  BoundaryRootedGraph working_;
  RootStructure roots_;
  TuckerOptions options_;
  VertexSet cycle_set_;
  std::vector<std::size_t> distance_to_cycle_;
};

struct TuckerResult {
  RootStructure roots;
  BoundaryRootedGraph working;
  PartialColouring colouring;
  ConditionReport initial_conditions;
  std::vector<StepRecord> steps;
  std::vector<PartialColouring> chain;
  std::vector<VertexSet> sets;
  std::optional<std::size_t> input_min_motion;
  int max_generation = 0;
  std::size_t final_stabiliser_size = 0;
  bool final_distinguishing = false;
  bool final_healthy = false;
  bool root_component_shape = false;
};

// Full run: preconditions (Δ ≤ 5, a cycle, minimum motion ≥ threshold), induction to
// S = V, then verification of the final colouring against (G, R ∪ B).
TuckerResult tucker_colouring(const BoundaryRootedGraph& g, TuckerOptions options = {});

// Component of R is R plus pendant leaves attached to R - C only.
bool root_component_shape_ok(const BoundaryRootedGraph& working, const RootStructure& roots,
                             const PartialColouring& c);

nlohmann::json to_json(const StepRecord& r);
nlohmann::json to_json(const ConditionReport& r);

}  // namespace distlab::tucker
