#include "doctest.h"
#include "oracles.hpp"
#include "properties.hpp"

#include "distlab/errors.hpp"
#include "distlab/generators.hpp"
#include "distlab/lab.hpp"

using namespace distlab;

namespace {

PartialColouring word(const std::string& w) {
  std::vector<Colour> c;
  for (char ch : w) c.push_back(ch - '0');
  return PartialColouring::total(c, 2);
}

PartialColouring single(std::size_t n, Vertex v, Colour c) {
  PartialColouring out(n, 2);
  out.assign(v, c);
  return out;
}

}  // namespace

TEST_SUITE("lab") {
  TEST_CASE("compatibility and unions") {
    const auto a = single(4, 0, 1);
    const auto b = single(4, 2, 0);
    CHECK(compatible(a, b));
    CHECK(compatible(a, a));
    CHECK_FALSE(compatible(a, single(4, 0, 0)));
    CHECK(union_colouring(a, a) == a);

    const auto u = union_colouring(a, b);
    CHECK(u.domain() == VertexSet{0, 2});
    CHECK(u.colour(0) == 1);
    CHECK(u.colour(2) == 0);

    auto ext = a;
    ext.assign(3, 0);
    CHECK(extends(ext, a));
    CHECK_FALSE(extends(a, ext));
    CHECK(union_colouring(a, ext) == ext);

    try {
      union_colouring(a, single(4, 0, 0));
      FAIL("expected an error");
    } catch (const InvalidArgument& e) {
      CHECK(std::string(e.what()).find('0') != std::string::npos);
    }
  }

  TEST_CASE("S-distinguishing and S-preserving examples") {
    const auto c6 = generate("cycle", {6});
    const PartialColouring none(6, 2);
    CHECK(is_S_distinguishing(c6, none, {}));
    CHECK_FALSE(is_S_distinguishing(c6, none, {3}));
    CHECK(is_S_distinguishing(c6, PartialColouring::total({0, 1, 2, 3, 4, 5}, 6), {0, 1, 2}));
    CHECK(is_S_preserving(c6, none, {0, 1, 2, 3, 4, 5}));
    CHECK_FALSE(is_S_preserving(c6, none, {0, 1}));
    // {0,3} is a union of stabiliser orbits once 0 and 3 get a colour of their own.
    PartialColouring marked(6, 2);
    marked.assign(0, 1);
    marked.assign(3, 1);
    marked.assign(1, 0);
    marked.assign(2, 0);
    marked.assign(4, 0);
    marked.assign(5, 0);
    CHECK(is_S_preserving(c6, marked, {0, 3}));
    CHECK_FALSE(is_S_distinguishing(c6, marked, {0, 3}));
  }

  TEST_CASE("is_distinguishing examples") {
    // Smallest asymmetric tree: branches of length 1, 2 and 3 at vertex 2.
    const Graph asym(7, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {2, 6}});
    REQUIRE(enumerate_automorphisms(BoundaryRootedGraph(asym)).size() == 1);
    CHECK(is_distinguishing(asym, PartialColouring::total(std::vector<Colour>(7, 0), 1)));
    const Graph k3(3, {{0, 1}, {1, 2}, {0, 2}});
    for (int mask = 0; mask < 8; ++mask) {
      CHECK_FALSE(is_distinguishing(k3, word(std::to_string(mask & 1) + std::to_string((mask >> 1) & 1) +
                                             std::to_string((mask >> 2) & 1))));
    }
    CHECK(is_distinguishing(generate("cycle", {6}).graph, word("001011")));
    CHECK_FALSE(is_distinguishing(generate("cycle", {6}).graph, word("000111")));
    CHECK_THROWS_AS(is_distinguishing(k3, single(3, 0, 0)), PreconditionError);
  }

  TEST_CASE("distinguishing numbers") {
    const auto d = [](const BoundaryRootedGraph& g) { return distinguishing_number(g, 8).k; };
    CHECK(d(generate("cycle", {5})) == 3);
    CHECK(d(generate("complete", {4})) == 4);
    CHECK(d(generate("complete_bipartite", {3})) == 4);
    CHECK(d(generate("cycle", {6})) == 2);
    CHECK(d(BoundaryRootedGraph(Graph(1, {}))) == 1);
    CHECK(d(generate("petersen", {})) == 3);

    const auto capped = distinguishing_number(generate("complete", {5}), 3);
    CHECK_FALSE(capped.k.has_value());
    CHECK(capped.k_max == 3);

    const auto witness = distinguishing_number(generate("cycle", {7}), 4);
    REQUIRE(witness.colouring.has_value());
    CHECK(is_distinguishing(generate("cycle", {7}).graph, *witness.colouring));
    CHECK(witness.group_order == 14);

    SolverOptions tight;
    tight.budget = 3;
    CHECK_THROWS_AS(distinguishing_number(generate("complete", {6}), 6, tight), BudgetExceeded);
  }

  TEST_CASE("solver matches the unpruned oracle on small graphs") {
    Rng rng(0xD15);
    for (int i = 0; i < 150; ++i) {
      const std::size_t n = 1 + rng.below(6);
      BoundaryRootedGraph g(random_connected_graph(n, rng));
      if (rng.chance(1, 4)) g = BoundaryRootedGraph(g.graph, {static_cast<Vertex>(rng.below(n))});
      const auto fast = distinguishing_number(g, static_cast<Colour>(n));
      const auto brute = oracle::distinguishing_number(g, static_cast<Colour>(n));
      REQUIRE(fast.k.has_value());
      CHECK(*fast.k == brute);
      CHECK(fast.group_order == oracle::automorphisms(g).size());
    }
  }

  TEST_CASE("union of distinguishing colourings") {
    const auto t = props::union_distinguishing(200, 11);
    CHECK(t.cases >= 200);
    CHECK_MESSAGE(t.failures == 0, t.first_failure);
  }

  TEST_CASE("extensions stay S-distinguishing") {
    Rng rng(77);
    int checked = 0;
    for (int i = 0; i < 300; ++i) {
      const std::size_t n = 3 + rng.below(5);
      const BoundaryRootedGraph g(random_connected_graph(n, rng));
      const auto c = props::random_partial(n, 2, rng);
      const VertexSet s = props::fixed_points(stabiliser(g, c), n);
      auto ext = c;
      for (std::size_t v = 0; v < n; ++v) {
        if (!ext.is_coloured(static_cast<Vertex>(v)) && rng.chance(1, 2)) {
          ext.assign(static_cast<Vertex>(v), static_cast<Colour>(rng.below(2)));
        }
      }
      CHECK(is_S_distinguishing(g, ext, s));
      CHECK(stabiliser(g, ext).size() <= stabiliser(g, c).size());
      ++checked;
    }
    CHECK(checked == 300);
  }

  TEST_CASE("verify_chain examples") {
    const auto c6 = generate("cycle", {6});
    const auto injective = PartialColouring::total({0, 1, 2, 3, 4, 5}, 6);
    const auto ok = verify_chain(c6, {injective}, {{0, 1, 2, 3, 4, 5}});
    CHECK(ok.ok);
    CHECK(ok.limit_distinguishing);

    const PartialColouring empty(6, 2);
    const auto bad = verify_chain(c6, {empty, word("001011")}, {{0}, {0, 1, 2, 3, 4, 5}});
    CHECK_FALSE(bad.ok);
    REQUIRE(bad.first_failure.has_value());
    CHECK(*bad.first_failure == 0);

    const auto short_cover = verify_chain(c6, {word("001011")}, {{0, 1}});
    CHECK_FALSE(short_cover.ok);
    CHECK_FALSE(short_cover.covers_vertices);

    CHECK_THROWS_AS(verify_chain(c6, {word("001011"), word("000111")}, {{}, {}}), PreconditionError);
  }

  TEST_CASE("accepted chains have distinguishing limits") {
    const auto t = props::chain_limit(200, 12);
    CHECK(t.cases >= 200);
    CHECK_MESSAGE(t.failures == 0, t.first_failure);
  }
}
