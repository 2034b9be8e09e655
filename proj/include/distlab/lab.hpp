#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "distlab/colouring.hpp"
#include "distlab/graph.hpp"
#include "distlab/symmetry.hpp"

namespace distlab {

bool compatible(const PartialColouring& a, const PartialColouring& b);

// Union of two compatible colourings; the colour count is the larger of the two.
// Throws InvalidArgument naming a witness vertex when they disagree.
PartialColouring union_colouring(const PartialColouring& a, const PartialColouring& b);

// True when `later` agrees with `earlier` on all of dom(earlier).
bool extends(const PartialColouring& later, const PartialColouring& earlier);

// Every c-preserving automorphism of (g, R ∪ B) fixes s pointwise.
bool is_S_distinguishing(const BoundaryRootedGraph& g, const PartialColouring& c,
                         const VertexSet& s, SearchLimits limits = {});
// Every c-preserving automorphism of (g, R ∪ B) maps s onto itself.
bool is_S_preserving(const BoundaryRootedGraph& g, const PartialColouring& c, const VertexSet& s,
                     SearchLimits limits = {});
bool is_domain_distinguishing(const BoundaryRootedGraph& g, const PartialColouring& c,
                              SearchLimits limits = {});

// c must be total; no roots or boundary are fixed.
bool is_distinguishing(const Graph& g, const PartialColouring& c, SearchLimits limits = {});

struct DistinguishingResult {
  // Least k found, or nullopt when no k <= k_max works ("D > k_max").
  std::optional<Colour> k;
  Colour k_max = 0;
  // A witnessing distinguishing colouring when k is set.
  std::optional<PartialColouring> colouring;
  std::size_t group_order = 0;
  std::size_t candidates_checked = 0;
};

struct SolverOptions {
  std::size_t budget = 100'000'000;  // candidate-colouring checks
  SearchLimits limits = {};
};

// Exact distinguishing number of (g, R ∪ B) by exhaustive search that only visits
// colourings lexicographically least in their orbit under the automorphism group.
DistinguishingResult distinguishing_number(const BoundaryRootedGraph& g, Colour k_max,
                                           SolverOptions options = {});
DistinguishingResult distinguishing_number(const Graph& g, Colour k_max,
                                           SolverOptions options = {});

struct ChainReport {
  bool ok = false;
  bool increasing = false;
  bool covers_vertices = false;
  // First index whose colouring is not S_i-distinguishing, if any.
  std::optional<std::size_t> first_failure;
  // The limit colouring re-checked directly against the stabiliser.
  bool limit_distinguishing = false;
};

// Checks the limit-colouring argument on a finite chain: the chain is increasing,
// c_i is S_i-distinguishing, and the S_i cover V. Throws PreconditionError with the
// first offending index when the chain is not increasing.
ChainReport verify_chain(const BoundaryRootedGraph& g, const std::vector<PartialColouring>& chain,
                         const std::vector<VertexSet>& sets, SearchLimits limits = {});

}  // namespace distlab
