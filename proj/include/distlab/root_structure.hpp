#pragma once

#include <optional>
#include <vector>

#include "distlab/graph.hpp"

namespace distlab {

// The root set both constructions start from: either a shortest cycle C with one
// vertex s removed plus a geodesic path P from C to the boundary (R = P + C - s),
// or, for trees, a geodesic path from a non-boundary leaf to the boundary.
struct RootStructure {
  bool from_cycle = false;
  std::vector<Vertex> cycle;    // C in cyclic order (empty for the leaf case)
  std::vector<Vertex> path;     // P, from its start on C (or the leaf) to the boundary
  std::optional<Vertex> removed;  // s
  std::vector<Vertex> ray;      // R in ray order: first vertex ... boundary end
  VertexSet roots;              // R as a set

  VertexSet cycle_set() const { return make_vertex_set(cycle); }
};

// R = P + C - s. Among all starts on C and both choices of s, picks the shortest P
// for which R induces a path, breaking ties by (start, s). Throws PreconditionError
// on acyclic input and TruncationError when no boundary is reachable.
RootStructure cycle_root_structure(const BoundaryRootedGraph& g);

// Geodesic path from the least non-boundary leaf to the boundary. Throws
// PreconditionError when the graph has a cycle or every leaf is a boundary vertex.
RootStructure leaf_root_structure(const BoundaryRootedGraph& g);

}  // namespace distlab
