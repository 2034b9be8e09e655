#include "distlab/graph.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <iterator>

#include "distlab/errors.hpp"

namespace distlab {

VertexSet make_vertex_set(std::vector<Vertex> vertices) {
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  return vertices;
}

bool contains(const VertexSet& set, Vertex v) {
  return std::binary_search(set.begin(), set.end(), v);
}

VertexSet set_union(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

VertexSet set_difference(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

VertexSet set_intersection(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

Graph::Graph(std::size_t n, std::span<const Edge> edges) {
  if (n == 0) throw InvalidArgument("graph must have at least one vertex");
  adjacency_.resize(n);
  matrix_.assign(n * n, 0);
  for (const auto& [u, v] : edges) {
    if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= n || static_cast<std::size_t>(v) >= n) {
      throw InvalidArgument("edge endpoint out of range: {" + std::to_string(u) + "," +
                            std::to_string(v) + "}");
    }
    if (u == v) throw InvalidArgument("self-loop at vertex " + std::to_string(u));
    auto& cell = matrix_[static_cast<std::size_t>(u) * n + static_cast<std::size_t>(v)];
    if (cell != 0) {
      throw InvalidArgument("duplicate edge {" + std::to_string(u) + "," + std::to_string(v) +
                            "}");
    }
    cell = 1;
    matrix_[static_cast<std::size_t>(v) * n + static_cast<std::size_t>(u)] = 1;
    adjacency_[static_cast<std::size_t>(u)].push_back(v);
    adjacency_[static_cast<std::size_t>(v)].push_back(u);
    ++edge_count_;
  }
  for (auto& list : adjacency_) {
    std::sort(list.begin(), list.end());
    max_degree_ = std::max(max_degree_, list.size());
  }
  const auto dist = bfs_distances(*this, {0});
  const auto unreached = std::find(dist.begin(), dist.end(), kUnreachable);
  if (unreached != dist.end()) {
    throw InvalidArgument("graph is disconnected: vertex " +
                          std::to_string(unreached - dist.begin()) + " unreachable from 0");
  }
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (std::size_t u = 0; u < order(); ++u) {
    for (Vertex v : adjacency_[u]) {
      if (static_cast<Vertex>(u) < v) out.emplace_back(static_cast<Vertex>(u), v);
    }
  }
  return out;
}

void Graph::set_labels(std::vector<std::string> labels) {
  if (!labels.empty() && labels.size() != order()) {
    throw InvalidArgument("label table size does not match vertex count");
  }
  labels_ = std::move(labels);
}

BoundaryRootedGraph::BoundaryRootedGraph(Graph g, VertexSet r, VertexSet b)
    : graph(std::move(g)), roots(make_vertex_set(std::move(r))), boundary(make_vertex_set(std::move(b))) {
  const auto n = static_cast<Vertex>(graph.order());
  for (const auto* set : {&roots, &boundary}) {
    if (!set->empty() && (set->front() < 0 || set->back() >= n)) {
      throw InvalidArgument("root/boundary vertex out of range");
    }
  }
}

std::vector<std::size_t> bfs_distances(const Graph& g, const VertexSet& sources) {
  if (sources.empty()) throw PreconditionError("bfs_distances: empty source set");
  std::vector<std::size_t> dist(g.order(), kUnreachable);
  std::deque<Vertex> queue;
  for (Vertex s : sources) {
    if (s < 0 || static_cast<std::size_t>(s) >= g.order()) {
      throw InvalidArgument("bfs_distances: source out of range");
    }
    if (dist[static_cast<std::size_t>(s)] != 0) {
      dist[static_cast<std::size_t>(s)] = 0;
      queue.push_back(s);
    }
  }
  while (!queue.empty()) {
    const Vertex u = queue.front();
    queue.pop_front();
    for (Vertex w : g.neighbours(u)) {
      auto& d = dist[static_cast<std::size_t>(w)];
      if (d == kUnreachable) {
        d = dist[static_cast<std::size_t>(u)] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

namespace {

// Length of a shortest cycle through BFS from every vertex; 0 if acyclic.
std::size_t girth(const Graph& g) {
  std::size_t best = 0;
  const std::size_t n = g.order();
  std::vector<std::size_t> dist(n);
  std::vector<Vertex> parent(n);
  for (std::size_t s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), kUnreachable);
    std::fill(parent.begin(), parent.end(), -1);
    std::deque<Vertex> queue{static_cast<Vertex>(s)};
    dist[s] = 0;
    while (!queue.empty()) {
      const Vertex u = queue.front();
      queue.pop_front();
      for (Vertex w : g.neighbours(u)) {
        const auto wi = static_cast<std::size_t>(w);
        if (dist[wi] == kUnreachable) {
          dist[wi] = dist[static_cast<std::size_t>(u)] + 1;
          parent[wi] = u;
          queue.push_back(w);
        } else if (parent[static_cast<std::size_t>(u)] != w) {
          const std::size_t len = dist[static_cast<std::size_t>(u)] + dist[wi] + 1;
          if (best == 0 || len < best) best = len;
        }
      }
    }
  }
  return best;
}

}  // namespace

std::optional<std::vector<Vertex>> shortest_cycle(const Graph& g) {
  const std::size_t len = girth(g);
  if (len == 0) return std::nullopt;
  const std::size_t n = g.order();
  // Depth-first in ascending neighbour order from each candidate minimum vertex;
  // the first closed walk found is the lexicographically least shortest cycle.
  for (std::size_t s = 0; s < n; ++s) {
    const auto start = static_cast<Vertex>(s);
    const auto dist = bfs_distances(g, {start});
    std::vector<Vertex> path{start};
    std::vector<char> on_path(n, 0);
    on_path[s] = 1;
    std::function<bool()> extend = [&]() -> bool {
      const Vertex tail = path.back();
      if (path.size() == len) return g.adjacent(tail, start);
      for (Vertex w : g.neighbours(tail)) {
        const auto wi = static_cast<std::size_t>(w);
        if (w <= start || on_path[wi] != 0) continue;
        // The walk must still be able to close within the remaining steps.
        if (dist[wi] > len - path.size()) continue;
        path.push_back(w);
        on_path[wi] = 1;
        if (extend()) return true;
        on_path[wi] = 0;
        path.pop_back();
      }
      return false;
    };
    if (extend()) return path;
  }
  throw StructuralViolation("shortest_cycle: girth found but no cycle reconstructed");
}

std::vector<Vertex> geodesic_path_to_boundary(const BoundaryRootedGraph& g, Vertex start,
                                              const VertexSet& avoid) {
  const Graph& graph = g.graph;
  const std::size_t n = graph.order();
  if (start < 0 || static_cast<std::size_t>(start) >= n) {
    throw InvalidArgument("geodesic_path_to_boundary: start out of range");
  }
  if (contains(g.boundary, start)) return {start};

  auto blocked = [&](Vertex v) { return v == start || contains(avoid, v); };

  // Distance of every admissible vertex to the boundary, walking only through
  // admissible vertices.
  std::vector<std::size_t> to_boundary(n, kUnreachable);
  std::deque<Vertex> queue;
  for (Vertex b : g.boundary) {
    if (blocked(b)) continue;
    to_boundary[static_cast<std::size_t>(b)] = 0;
    queue.push_back(b);
  }
  while (!queue.empty()) {
    const Vertex u = queue.front();
    queue.pop_front();
    for (Vertex w : graph.neighbours(u)) {
      const auto wi = static_cast<std::size_t>(w);
      if (blocked(w) || to_boundary[wi] != kUnreachable) continue;
      to_boundary[wi] = to_boundary[static_cast<std::size_t>(u)] + 1;
      queue.push_back(w);
    }
  }

  std::size_t best = kUnreachable;
  for (Vertex w : graph.neighbours(start)) best = std::min(best, to_boundary[static_cast<std::size_t>(w)]);
  if (best == kUnreachable) {
    throw TruncationError("truncation unsuitable: no boundary vertex reachable from " +
                          std::to_string(start) + " outside the avoided set");
  }

  std::vector<Vertex> path{start};
  std::size_t remaining = best + 1;
  Vertex current = start;
  while (remaining > 0) {
    for (Vertex w : graph.neighbours(current)) {
      if (to_boundary[static_cast<std::size_t>(w)] == remaining - 1 && !blocked(w)) {
        current = w;
        break;
      }
    }
    path.push_back(current);
    --remaining;
  }
  return path;
}

}  // namespace distlab
