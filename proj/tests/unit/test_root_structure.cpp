#include <algorithm>

#include "doctest.h"

#include "distlab/errors.hpp"
#include "distlab/generators.hpp"
#include "distlab/root_structure.hpp"

using namespace distlab;

namespace {

// Consecutive ray vertices adjacent, no chords.
bool induced_path(const Graph& g, const std::vector<Vertex>& ray) {
  for (std::size_t i = 0; i < ray.size(); ++i) {
    for (std::size_t j = i + 1; j < ray.size(); ++j) {
      if (g.adjacent(ray[i], ray[j]) != (j == i + 1)) return false;
    }
  }
  return true;
}

}  // namespace

TEST_SUITE("root_structure") {
  TEST_CASE("cycle with a pendant path") {
    const auto g = generate("cycle_with_boundary_tail", {6, 3});
    const auto rs = cycle_root_structure(g);
    CHECK(rs.from_cycle);
    CHECK(rs.cycle.size() == 6);
    CHECK(rs.path == std::vector<Vertex>{0, 6, 7, 8});
    REQUIRE(rs.removed.has_value());
    CHECK((*rs.removed == 1 || *rs.removed == 5));
    // R = P + C - s.
    VertexSet expect{0, 1, 2, 3, 4, 5, 6, 7, 8};
    expect.erase(std::find(expect.begin(), expect.end(), *rs.removed));
    CHECK(rs.roots == expect);
    CHECK(rs.ray.back() == 8);
    CHECK(rs.ray.size() == 8);
    CHECK(induced_path(g.graph, rs.ray));
  }

  TEST_CASE("ray is induced on other families") {
    for (const auto& g : {generate("grid", {5, 5}), generate("hairy_cycle", {5, 2, 2}),
                          generate("tree_with_base_cycle", {3, 3})}) {
      const auto rs = cycle_root_structure(g);
      CHECK(induced_path(g.graph, rs.ray));
      // P stops at its first boundary vertex (C itself may lie on the frame).
      CHECK(std::count_if(rs.path.begin(), rs.path.end(), [&](Vertex v) {
              return std::find(g.boundary.begin(), g.boundary.end(), v) != g.boundary.end();
            }) == 1);
      CHECK(std::find(g.boundary.begin(), g.boundary.end(), rs.ray.back()) != g.boundary.end());
    }
  }

  TEST_CASE("cycle structure errors") {
    CHECK_THROWS_AS(cycle_root_structure(generate("truncated_regular_tree", {3, 2})),
                    PreconditionError);
    CHECK_THROWS_AS(cycle_root_structure(generate("cycle", {5})), TruncationError);
  }

  TEST_CASE("leaf rays in trees") {
    // Path 0-1-2-3 with a leaf 4 on vertex 1; boundary {3}.
    const BoundaryRootedGraph g(Graph(5, {{0, 1}, {1, 2}, {2, 3}, {1, 4}}), {}, {3});
    const auto rs = leaf_root_structure(g);
    CHECK_FALSE(rs.from_cycle);
    CHECK(rs.ray == std::vector<Vertex>{0, 1, 2, 3});
    CHECK(rs.roots == VertexSet{0, 1, 2, 3});

    CHECK_THROWS_AS(leaf_root_structure(generate("truncated_regular_tree", {3, 2})),
                    PreconditionError);
    CHECK_THROWS_AS(leaf_root_structure(generate("cycle_with_boundary_tail", {4, 1})),
                    PreconditionError);
  }
}
