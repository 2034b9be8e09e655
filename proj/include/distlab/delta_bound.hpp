#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "json.hpp"

#include "distlab/colouring.hpp"
#include "distlab/graph.hpp"
#include "distlab/root_structure.hpp"
#include "distlab/symmetry.hpp"

// (Δ−1)-colouring by neighbourhood classes, grown outward from a colour-0 ray R.
namespace distlab::delta {

struct NeighbourhoodClass {
  VertexSet members;
  VertexSet anchor_neighbours;  // common neighbourhood inside S
};

// Cycle structure when there is a cycle, otherwise the ray from a non-boundary leaf.
RootStructure select_root_structure(const BoundaryRootedGraph& g);

// Partition of the frontier of S by neighbourhood in S, ordered by least member.
// Throws PreconditionError when S is empty or does not induce a connected subgraph.
std::vector<NeighbourhoodClass> neighbourhood_classes(const Graph& g, const VertexSet& s);

struct StarCheck {
  bool holds = true;
  std::optional<std::vector<Vertex>> witness;  // a second qualifying path
  std::size_t paths_examined = 0;
};

// Finite reading of (*): among colour-0 paths that end at their first boundary vertex
// and cannot be extended at the start, `ray` must be the only one whose first vertex is a
// non-boundary leaf or shares a neighbour off the path with a later path vertex.
// Throws BudgetExceeded when more than `budget` paths are explored.
StarCheck check_star_property(const BoundaryRootedGraph& g, const PartialColouring& c,
                              const std::vector<Vertex>& ray, std::size_t budget = 1'000'000);

struct DeltaStep {
  std::size_t index = 0;
  Vertex v = -1;
  VertexSet class_members;
  VertexSet anchor;
  std::vector<std::pair<Vertex, Colour>> colours_assigned;
  bool domain_distinguishing = false;
};

struct DeltaOptions {
  SearchLimits limits = {};
  std::size_t path_budget = 1'000'000;
};

struct DeltaResult {
  RootStructure roots;
  BoundaryRootedGraph working;
  PartialColouring colouring;
  std::vector<DeltaStep> steps;
  std::vector<std::size_t> timestamp;  // 0 for R, step index otherwise
  std::vector<PartialColouring> chain;
  std::vector<VertexSet> sets;
  std::size_t max_degree = 0;
  std::size_t colours_used = 0;
  bool every_step_domain_distinguishing = false;
  bool final_distinguishing = false;
  bool no_zero_next_to_roots = false;
  bool zero_only_in_full_classes = false;
  bool ordering_holds = false;
  StarCheck star;
};

// Requires Δ ≥ 3. Throws StructuralViolation when a class exceeds Δ−1 members or the
// final colouring is preserved by a nontrivial automorphism of (G, R ∪ B).
DeltaResult delta_minus_one_colouring(const BoundaryRootedGraph& g, DeltaOptions options = {});

nlohmann::json to_json(const DeltaStep& s);

}  // namespace distlab::delta
