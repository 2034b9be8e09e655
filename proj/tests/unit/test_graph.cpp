#include <set>

#include "doctest.h"
#include "oracles.hpp"

#include "distlab/errors.hpp"
#include "distlab/generators.hpp"
#include "distlab/graph.hpp"

using namespace distlab;

namespace {

Graph path3() { return Graph(3, {{0, 1}, {1, 2}}); }

Graph cycle(Vertex n) {
  std::vector<Edge> e;
  for (Vertex i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return Graph(static_cast<std::size_t>(n), e);
}

bool is_induced_cycle(const Graph& g, const std::vector<Vertex>& c) {
  const std::size_t k = c.size();
  for (std::size_t i = 0; i < k; ++i) {
    if (!g.adjacent(c[i], c[(i + 1) % k])) return false;
    for (std::size_t j = i + 2; j < k; ++j) {
      if (i == 0 && j == k - 1) continue;
      if (g.adjacent(c[i], c[j])) return false;
    }
  }
  return true;
}

}  // namespace

TEST_SUITE("graph") {
  TEST_CASE("construction rejects bad edge lists") {
    CHECK_THROWS_AS(Graph(2, {{0, 0}}), InvalidArgument);
    CHECK_THROWS_AS(Graph(2, {{0, 1}, {1, 0}}), InvalidArgument);
    CHECK_THROWS_AS(Graph(2, {{0, 2}}), InvalidArgument);
    CHECK_THROWS_AS(Graph(3, {{0, 1}}), InvalidArgument);  // disconnected
    CHECK_THROWS_AS(Graph(0, {}), InvalidArgument);
  }

  TEST_CASE("adjacency is symmetric and sorted") {
    const Graph g(4, {{2, 0}, {0, 1}, {3, 0}});
    CHECK(g.order() == 4);
    CHECK(g.size() == 3);
    CHECK(g.max_degree() == 3);
    const auto nb = g.neighbours(0);
    CHECK(std::vector<Vertex>(nb.begin(), nb.end()) == std::vector<Vertex>{1, 2, 3});
    CHECK(g.adjacent(2, 0));
    CHECK(g.adjacent(0, 2));
    CHECK_FALSE(g.adjacent(1, 2));
    CHECK(g.edges() == std::vector<Edge>{{0, 1}, {0, 2}, {0, 3}});
  }

  TEST_CASE("set helpers") {
    CHECK(make_vertex_set({3, 1, 3, 2}) == VertexSet{1, 2, 3});
    CHECK(set_union({1, 3}, {2, 3}) == VertexSet{1, 2, 3});
    CHECK(set_difference({1, 2, 3}, {2}) == VertexSet{1, 3});
    CHECK(set_intersection({1, 2, 3}, {2, 3, 4}) == VertexSet{2, 3});
    CHECK(contains({1, 4}, 4));
  }

  TEST_CASE("boundary-rooted graph validates its vertex sets") {
    CHECK_THROWS_AS(BoundaryRootedGraph(path3(), {5}, {}), InvalidArgument);
    const BoundaryRootedGraph g(path3(), {0}, {0, 2});
    CHECK(g.fixed() == VertexSet{0, 2});
  }

  TEST_CASE("bfs distances") {
    CHECK(bfs_distances(path3(), {0}) == std::vector<std::size_t>{0, 1, 2});
    CHECK(bfs_distances(path3(), {0, 1, 2}) == std::vector<std::size_t>{0, 0, 0});
    CHECK(bfs_distances(cycle(6), {0}) == std::vector<std::size_t>{0, 1, 2, 3, 2, 1});
    CHECK_THROWS_AS(bfs_distances(path3(), {}), PreconditionError);
  }

  TEST_CASE("shortest cycle examples") {
    CHECK_FALSE(shortest_cycle(path3()).has_value());
    CHECK(shortest_cycle(cycle(5)) == std::vector<Vertex>{0, 1, 2, 3, 4});
    const Graph k4(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    CHECK(shortest_cycle(k4) == std::vector<Vertex>{0, 1, 2});
  }

  TEST_CASE("shortest cycle agrees with full cycle enumeration") {
    Rng rng(11);
    for (int trial = 0; trial < 300; ++trial) {
      const Graph g = random_connected_graph(3 + rng.below(5), rng);
      const auto all = oracle::all_cycles(g);
      const auto got = shortest_cycle(g);
      if (all.empty()) {
        CHECK_FALSE(got.has_value());
        continue;
      }
      REQUIRE(got.has_value());
      std::size_t best = all.front().size();
      for (const auto& c : all) best = std::min(best, c.size());
      std::vector<std::vector<Vertex>> shortest;
      for (const auto& c : all) {
        if (c.size() == best) shortest.push_back(c);
      }
      CHECK(got->size() == best);
      CHECK(*got == *std::min_element(shortest.begin(), shortest.end()));
      CHECK(is_induced_cycle(g, *got));
    }
  }

  TEST_CASE("geodesic path to boundary") {
    const BoundaryRootedGraph p(path3(), {}, {2});
    CHECK(geodesic_path_to_boundary(p, 2, {}) == std::vector<Vertex>{2});
    CHECK(geodesic_path_to_boundary(p, 0, {}) == std::vector<Vertex>{0, 1, 2});
    CHECK_THROWS_AS(geodesic_path_to_boundary(p, 0, {1}), TruncationError);

    const auto grid = generate("grid", {7, 7});
    const Vertex centre = 3 * 7 + 3;
    const auto path = geodesic_path_to_boundary(grid, centre, {});
    CHECK(path.size() == 4);
    CHECK(path.front() == centre);
    CHECK(contains(grid.boundary, path.back()));
  }

  TEST_CASE("geodesic length matches BFS on the graph without the avoid set") {
    Rng rng(5);
    for (int trial = 0; trial < 200; ++trial) {
      const std::size_t n = 4 + rng.below(6);
      const Graph g = random_connected_graph(n, rng);
      const auto b = static_cast<Vertex>(rng.below(n));
      const BoundaryRootedGraph brg(g, {}, {b});
      const auto start = static_cast<Vertex>(rng.below(n));
      VertexSet avoid;
      for (std::size_t v = 0; v < n; ++v) {
        const auto x = static_cast<Vertex>(v);
        if (x != start && x != b && rng.chance(1, 4)) avoid.push_back(x);
      }
      // Independent BFS over V - avoid.
      std::vector<int> dist(n, -1);
      std::vector<Vertex> queue{start};
      dist[static_cast<std::size_t>(start)] = 0;
      for (std::size_t i = 0; i < queue.size(); ++i) {
        for (Vertex w : g.neighbours(queue[i])) {
          if (dist[static_cast<std::size_t>(w)] >= 0 || contains(avoid, w)) continue;
          dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(queue[i])] + 1;
          queue.push_back(w);
        }
      }
      const int expected = dist[static_cast<std::size_t>(b)];
      if (expected < 0) {
        CHECK_THROWS_AS(geodesic_path_to_boundary(brg, start, avoid), TruncationError);
        continue;
      }
      const auto path = geodesic_path_to_boundary(brg, start, avoid);
      CHECK(static_cast<int>(path.size()) == expected + 1);
      for (std::size_t i = 0; i + 1 < path.size(); ++i) CHECK(g.adjacent(path[i], path[i + 1]));
      for (std::size_t i = 1; i < path.size(); ++i) CHECK_FALSE(contains(avoid, path[i]));
    }
  }
}
