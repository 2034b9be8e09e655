#include "distlab/generators.hpp"

#include <algorithm>
#include <numeric>

#include "distlab/errors.hpp"

namespace distlab {

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw InvalidArgument("Rng::below: bound must be positive");
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % bound;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

void require(bool ok, const std::string& family, const std::string& what) {
  if (!ok) throw InvalidArgument(family + ": " + what);
}

std::int64_t param(const Params& p, std::size_t i, const std::string& family) {
  require(i < p.size(), family, "missing parameter " + std::to_string(i + 1));
  return p[i];
}

void expect_count(const Params& p, std::size_t lo, std::size_t hi, const std::string& family) {
  require(p.size() >= lo && p.size() <= hi, family,
          "expected " + std::to_string(lo) + (lo == hi ? "" : "-" + std::to_string(hi)) +
              " parameters, got " + std::to_string(p.size()));
}

std::vector<Edge> cycle_edges(Vertex first, Vertex n) {
  std::vector<Edge> e;
  for (Vertex i = 0; i < n; ++i) e.emplace_back(first + i, first + (i + 1) % n);
  return e;
}

bool connected(std::size_t n, const std::vector<Edge>& edges) {
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::size_t parts = n;
  for (const auto& [u, v] : edges) {
    const auto a = find(static_cast<std::size_t>(u));
    const auto b = find(static_cast<std::size_t>(v));
    if (a != b) {
      parent[a] = b;
      --parts;
    }
  }
  return parts == 1;
}

BoundaryRootedGraph random_bounded_degree(std::int64_t n, std::int64_t delta, std::uint64_t seed) {
  const std::string fam = "random_bounded_degree";
  require(n >= 2 && n <= 5000, fam, "n must be in [2, 5000]");
  require(delta >= 2, fam, "Δ must be at least 2");
  Rng rng(seed);
  const auto nn = static_cast<std::size_t>(n);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<std::size_t> deg(nn, 0);
    std::vector<std::vector<char>> adj(nn, std::vector<char>(nn, 0));
    std::vector<Edge> edges;
    // Aim for a little over a spanning tree's worth of edges, capped by Δ.
    const std::size_t target = std::min<std::size_t>(
        nn - 1 + rng.below(nn / 2 + 1), nn * static_cast<std::size_t>(delta) / 2);
    std::size_t misses = 0;
    while (edges.size() < target && misses < 50 * nn) {
      const auto u = rng.below(nn);
      const auto v = rng.below(nn);
      if (u == v || adj[u][v] || deg[u] >= static_cast<std::size_t>(delta) ||
          deg[v] >= static_cast<std::size_t>(delta)) {
        ++misses;
        continue;
      }
      adj[u][v] = adj[v][u] = 1;
      ++deg[u];
      ++deg[v];
      edges.emplace_back(static_cast<Vertex>(std::min(u, v)), static_cast<Vertex>(std::max(u, v)));
    }
    if (!connected(nn, edges)) continue;
    Graph g(nn, edges);
    const auto dist = bfs_distances(g, {0});
    const auto far = std::max_element(dist.begin(), dist.end()) - dist.begin();
    return BoundaryRootedGraph(std::move(g), {}, {static_cast<Vertex>(far)});
  }
  throw InvalidArgument(fam + ": no connected sample in 1000 attempts");
}

}  // namespace

std::vector<std::string> family_names() {
  return {"cycle",       "complete",  "complete_bipartite",   "petersen",
          "star",        "cycle_with_boundary_tail",          "truncated_regular_tree",
          "grid",        "random_bounded_degree",             "delta_tightness",
          "hairy_cycle", "tree_with_base_cycle"};
}

BoundaryRootedGraph generate(const std::string& family, const Params& p, std::uint64_t seed) {
  if (family == "cycle") {
    expect_count(p, 1, 1, family);
    const auto n = param(p, 0, family);
    require(n >= 3 && n <= 100000, family, "n must be at least 3");
    const auto e = cycle_edges(0, static_cast<Vertex>(n));
    return BoundaryRootedGraph(Graph(static_cast<std::size_t>(n), e));
  }
  if (family == "complete") {
    expect_count(p, 1, 1, family);
    const auto n = param(p, 0, family);
    require(n >= 1 && n <= 2000, family, "n must be in [1, 2000]");
    std::vector<Edge> e;
    for (Vertex u = 0; u < n; ++u) {
      for (Vertex v = u + 1; v < n; ++v) e.emplace_back(u, v);
    }
    return BoundaryRootedGraph(Graph(static_cast<std::size_t>(n), e));
  }
  if (family == "complete_bipartite") {
    expect_count(p, 1, 2, family);
    const auto r = param(p, 0, family);
    const auto s = p.size() > 1 ? p[1] : r;
    require(r >= 1 && s >= 1 && r + s <= 2000, family, "sides must be positive");
    std::vector<Edge> e;
    for (Vertex u = 0; u < r; ++u) {
      for (Vertex v = 0; v < s; ++v) e.emplace_back(u, static_cast<Vertex>(r) + v);
    }
    return BoundaryRootedGraph(Graph(static_cast<std::size_t>(r + s), e));
  }
  if (family == "petersen") {
    expect_count(p, 0, 0, family);
    std::vector<Edge> e = cycle_edges(0, 5);
    for (Vertex i = 0; i < 5; ++i) {
      e.emplace_back(i, i + 5);
      e.emplace_back(5 + i, 5 + (i + 2) % 5);
    }
    return BoundaryRootedGraph(Graph(10, e));
  }
  if (family == "star") {
    expect_count(p, 1, 1, family);
    const auto k = param(p, 0, family);
    require(k >= 1 && k <= 100000, family, "k must be positive");
    std::vector<Edge> e;
    for (Vertex i = 1; i <= k; ++i) e.emplace_back(0, i);
    return BoundaryRootedGraph(Graph(static_cast<std::size_t>(k + 1), e));
  }
  if (family == "cycle_with_boundary_tail") {
    expect_count(p, 2, 2, family);
    const auto n = param(p, 0, family);
    const auto len = param(p, 1, family);
    require(n >= 3 && len >= 1 && n + len <= 100000, family, "need n >= 3 and len >= 1");
    auto e = cycle_edges(0, static_cast<Vertex>(n));
    for (Vertex i = 0; i < len; ++i) e.emplace_back(i == 0 ? 0 : static_cast<Vertex>(n) + i - 1,
                                                    static_cast<Vertex>(n) + i);
    return BoundaryRootedGraph(Graph(static_cast<std::size_t>(n + len), e), {},
                               {static_cast<Vertex>(n + len - 1)});
  }
  if (family == "truncated_regular_tree") {
    expect_count(p, 2, 2, family);
    const auto d = param(p, 0, family);
    const auto depth = param(p, 1, family);
    require(d >= 2 && depth >= 1, family, "need d >= 2 and depth >= 1");
    std::vector<Edge> e;
    std::vector<Vertex> level{0};
    Vertex next = 1;
    for (std::int64_t lv = 0; lv < depth; ++lv) {
      std::vector<Vertex> below;
      for (Vertex v : level) {
        const auto kids = lv == 0 ? d : d - 1;
        for (std::int64_t k = 0; k < kids; ++k) {
          require(next < 200000, family, "tree too large");
          e.emplace_back(v, next);
          below.push_back(next++);
        }
      }
      level = std::move(below);
    }
    return BoundaryRootedGraph(Graph(static_cast<std::size_t>(next), e), {}, make_vertex_set(level));
  }
  if (family == "tree_with_base_cycle") {
    // truncated_regular_tree(d, depth) with the root's children joined in a cycle.
    expect_count(p, 2, 2, family);
    const auto d = param(p, 0, family);
    require(d >= 3, family, "need d >= 3 for a base cycle");
    const auto tree = generate("truncated_regular_tree", p, seed);
    auto e = tree.graph.edges();
    for (Vertex i = 1; i <= d; ++i) {
      const Vertex j = i == d ? 1 : i + 1;
      if (d > 2 || i < j) e.emplace_back(std::min(i, j), std::max(i, j));
    }
    return BoundaryRootedGraph(Graph(tree.graph.order(), e), {}, tree.boundary);
  }
  if (family == "grid") {
    expect_count(p, 2, 2, family);
    const auto w = param(p, 0, family);
    const auto h = param(p, 1, family);
    require(w >= 2 && h >= 2 && w * h <= 200000, family, "need w, h >= 2");
    std::vector<Edge> e;
    std::vector<Vertex> frame;
    auto id = [&](std::int64_t x, std::int64_t y) { return static_cast<Vertex>(y * w + x); };
    for (std::int64_t y = 0; y < h; ++y) {
      for (std::int64_t x = 0; x < w; ++x) {
        if (x + 1 < w) e.emplace_back(id(x, y), id(x + 1, y));
        if (y + 1 < h) e.emplace_back(id(x, y), id(x, y + 1));
        if (x == 0 || y == 0 || x == w - 1 || y == h - 1) frame.push_back(id(x, y));
      }
    }
    return BoundaryRootedGraph(Graph(static_cast<std::size_t>(w * h), e), {},
                               make_vertex_set(frame));
  }
  if (family == "random_bounded_degree") {
    expect_count(p, 2, 2, family);
    return random_bounded_degree(param(p, 0, family), param(p, 1, family), seed);
  }
  if (family == "delta_tightness") {
    expect_count(p, 2, 2, family);
    const auto delta = param(p, 0, family);
    const auto tail = param(p, 1, family);
    require(delta >= 3 && delta <= 1000, family, "Δ must be at least 3");
    require(tail >= 1 && tail <= 100000, family, "tail must be at least 1");
    // Path 0..tail standing in for a ray whose first vertex had degree 1, then
    // Δ−1 new leaves on vertex 0.
    std::vector<Edge> e;
    for (Vertex i = 0; i < tail; ++i) e.emplace_back(i, i + 1);
    Vertex next = static_cast<Vertex>(tail) + 1;
    for (std::int64_t k = 0; k < delta - 1; ++k) e.emplace_back(0, next++);
    return BoundaryRootedGraph(Graph(static_cast<std::size_t>(next), e), {},
                               {static_cast<Vertex>(tail)});
  }
  if (family == "hairy_cycle") {
    // Cycle C_n, a boundary tail of length 2 on vertex 0, and t pendant paths of
    // length len on every other cycle vertex.
    expect_count(p, 3, 3, family);
    const auto n = param(p, 0, family);
    const auto t = param(p, 1, family);
    const auto len = param(p, 2, family);
    require(n >= 3 && t >= 1 && t <= 3 && len >= 1 && n * t * len <= 100000, family,
            "need n >= 3, 1 <= t <= 3, len >= 1");
    auto e = cycle_edges(0, static_cast<Vertex>(n));
    Vertex next = static_cast<Vertex>(n);
    e.emplace_back(0, next);
    e.emplace_back(next, next + 1);
    const Vertex boundary = next + 1;
    next += 2;
    for (Vertex c = 1; c < n; ++c) {
      for (std::int64_t k = 0; k < t; ++k) {
        Vertex prev = c;
        for (std::int64_t j = 0; j < len; ++j) {
          e.emplace_back(prev, next);
          prev = next++;
        }
      }
    }
    return BoundaryRootedGraph(Graph(static_cast<std::size_t>(next), e), {}, {boundary});
  }
  throw InvalidArgument("unknown graph family '" + family + "'");
}

std::vector<Edge> random_edge_set(std::size_t n, Rng& rng) {
  const std::uint64_t p = 1 + rng.below(99);
  std::vector<Edge> e;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      if (rng.chance(p, 100)) e.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
    }
  }
  return e;
}

Graph random_connected_graph(std::size_t n, Rng& rng) {
  if (n == 0) throw InvalidArgument("random_connected_graph: n must be positive");
  for (;;) {
    auto e = random_edge_set(n, rng);
    if (connected(n, e)) return Graph(n, e);
  }
}

}  // namespace distlab
