#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace distlab {

using Vertex = std::int32_t;
using Edge = std::pair<Vertex, Vertex>;

// Sorted, duplicate-free list of vertices. Every set-valued result in the library
// is returned in this form.
using VertexSet = std::vector<Vertex>;

VertexSet make_vertex_set(std::vector<Vertex> vertices);
bool contains(const VertexSet& set, Vertex v);
VertexSet set_union(const VertexSet& a, const VertexSet& b);
VertexSet set_difference(const VertexSet& a, const VertexSet& b);
VertexSet set_intersection(const VertexSet& a, const VertexSet& b);

// Simple, undirected, connected graph on vertices 0..n-1. Immutable once built.
class Graph {
 public:
  // Throws InvalidArgument on self-loops, duplicate edges, out-of-range endpoints,
  // an empty vertex set, or a disconnected result.
  Graph(std::size_t n, std::span<const Edge> edges);
  Graph(std::size_t n, std::initializer_list<Edge> edges)
      : Graph(n, std::span<const Edge>(edges.begin(), edges.size())) {}

  std::size_t order() const noexcept { return adjacency_.size(); }
  std::size_t size() const noexcept { return edge_count_; }

  std::span<const Vertex> neighbours(Vertex v) const {
    return adjacency_[static_cast<std::size_t>(v)];
  }
  std::size_t degree(Vertex v) const { return adjacency_[static_cast<std::size_t>(v)].size(); }
  std::size_t max_degree() const noexcept { return max_degree_; }

  bool adjacent(Vertex u, Vertex v) const {
    return matrix_[static_cast<std::size_t>(u) * order() + static_cast<std::size_t>(v)] != 0;
  }

  // Edges (u, v) with u < v in lexicographic order.
  std::vector<Edge> edges() const;

  // Optional external names; empty when the graph was built without them.
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  void set_labels(std::vector<std::string> labels);

  friend bool operator==(const Graph& a, const Graph& b) { return a.adjacency_ == b.adjacency_; }

 private:
  std::vector<std::vector<Vertex>> adjacency_;
  std::vector<std::uint8_t> matrix_;
  std::size_t edge_count_ = 0;
  std::size_t max_degree_ = 0;
  std::vector<std::string> labels_;
};

// A graph with roots R and a truncation boundary B. Admitted automorphisms fix R ∪ B
// pointwise; that is enforced by the symmetry engine, not here.
struct BoundaryRootedGraph {
  Graph graph;
  VertexSet roots;
  VertexSet boundary;

  BoundaryRootedGraph(Graph g, VertexSet r = {}, VertexSet b = {});

  VertexSet fixed() const { return set_union(roots, boundary); }
};

inline constexpr std::size_t kUnreachable = std::numeric_limits<std::size_t>::max();

// Hop distance from the nearest source; kUnreachable where no path exists.
std::vector<std::size_t> bfs_distances(const Graph& g, const VertexSet& sources);

// A shortest cycle, rotated to start at its least vertex and oriented so the
// sequence is lexicographically least among all shortest cycles.
std::optional<std::vector<Vertex>> shortest_cycle(const Graph& g);

// Shortest path from `start` to the boundary that never revisits `avoid` after
// `start`; lexicographically least among the shortest ones. Throws TruncationError
// when no such path exists.
std::vector<Vertex> geodesic_path_to_boundary(const BoundaryRootedGraph& g, Vertex start,
                                              const VertexSet& avoid);

}  // namespace distlab
