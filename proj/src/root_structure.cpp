#include "distlab/root_structure.hpp"

#include <algorithm>
#include <string>
#include <tuple>

#include "distlab/errors.hpp"

namespace distlab {

namespace {

bool induces_path(const Graph& g, const std::vector<Vertex>& ray) {
  for (std::size_t i = 0; i < ray.size(); ++i) {
    for (std::size_t j = i + 2; j < ray.size(); ++j) {
      if (g.adjacent(ray[i], ray[j])) return false;
    }
  }
  return true;
}

}  // namespace

RootStructure cycle_root_structure(const BoundaryRootedGraph& g) {
  const auto cycle = shortest_cycle(g.graph);
  if (!cycle) throw PreconditionError("root structure: graph is acyclic");
  if (g.boundary.empty()) throw TruncationError("truncation unsuitable: empty boundary");
  const std::size_t len = cycle->size();
  const VertexSet on_cycle = make_vertex_set(*cycle);

  std::optional<RootStructure> best;
  std::string last_error;
  for (std::size_t i = 0; i < len; ++i) {
    const Vertex start = (*cycle)[i];
    std::vector<Vertex> path;
    try {
      path = geodesic_path_to_boundary(g, start, set_difference(on_cycle, {start}));
    } catch (const TruncationError& e) {
      last_error = e.what();
      continue;
    }
    // s is one of the two cycle neighbours of start; walk the cycle away from s.
    for (int dir : {+1, -1}) {
      const std::size_t s_index = dir > 0 ? (i + 1) % len : (i + len - 1) % len;
      RootStructure rs;
      rs.from_cycle = true;
      rs.cycle = *cycle;
      rs.path = path;
      rs.removed = (*cycle)[s_index];
      // Ray: from s's other cycle neighbour around to start, then along P.
      for (std::size_t k = 1; k < len; ++k) {
        const std::size_t idx =
            dir > 0 ? (s_index + k) % len : (s_index + len - k) % len;
        rs.ray.push_back((*cycle)[idx]);
      }
      rs.ray.insert(rs.ray.end(), path.begin() + 1, path.end());
      if (!induces_path(g.graph, rs.ray)) continue;
      rs.roots = make_vertex_set(rs.ray);
      const auto key = [](const RootStructure& r) {
        return std::make_tuple(r.path.size(), r.path.front(), *r.removed);
      };
      if (!best || key(rs) < key(*best)) best = std::move(rs);
    }
  }
  if (!best) {
    throw TruncationError(last_error.empty()
                              ? "truncation unsuitable: no choice of P and s gives an induced ray"
                              : last_error);
  }
  return *best;
}

RootStructure leaf_root_structure(const BoundaryRootedGraph& g) {
  if (shortest_cycle(g.graph)) throw PreconditionError("root structure: graph has a cycle");
  for (std::size_t i = 0; i < g.graph.order(); ++i) {
    const auto v = static_cast<Vertex>(i);
    if (g.graph.degree(v) != 1 || contains(g.boundary, v)) continue;
    RootStructure rs;
    rs.path = geodesic_path_to_boundary(g, v, {});
    rs.ray = rs.path;
    rs.roots = make_vertex_set(rs.ray);
    return rs;
  }
  throw PreconditionError(
      "leafless tree truncation (every leaf is a boundary vertex): the tree case is not "
      "handled by this construction");
}

}  // namespace distlab
