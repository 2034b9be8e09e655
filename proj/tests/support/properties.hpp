#pragma once

// Randomised property checks for the colouring invariants. Each returns how many
// qualifying cases it examined and how many failed.

#include <optional>
#include <sstream>
#include <string>

#include "oracles.hpp"

#include "distlab/errors.hpp"
#include "distlab/generators.hpp"
#include "distlab/lab.hpp"
#include "distlab/tucker.hpp"

namespace props {

using namespace distlab;

struct Tally {
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string first_failure;

  void fail(const std::string& what) {
    if (failures++ == 0) first_failure = what;
  }
};

inline VertexSet fixed_points(const AutomorphismSet& s, std::size_t n) {
  VertexSet out;
  for (std::size_t v = 0; v < n; ++v) {
    const auto x = static_cast<Vertex>(v);
    bool fixed = true;
    for (const auto& a : s.elements) fixed = fixed && a(x) == x;
    if (fixed) out.push_back(x);
  }
  return out;
}

inline VertexSet random_subset(const VertexSet& from, Rng& rng) {
  VertexSet out;
  for (Vertex v : from) {
    if (rng.chance(2, 3)) out.push_back(v);
  }
  return out;
}

inline PartialColouring random_partial(std::size_t n, Colour k, Rng& rng, int num = 1, int den = 2) {
  PartialColouring c(n, k);
  for (std::size_t v = 0; v < n; ++v) {
    if (rng.chance(static_cast<std::uint64_t>(num), static_cast<std::uint64_t>(den))) {
      c.assign(static_cast<Vertex>(v), static_cast<Colour>(rng.below(static_cast<std::uint64_t>(k))));
    }
  }
  return c;
}

inline std::string graph_tag(const Graph& g) {
  std::ostringstream out;
  out << "n=" << g.order() << " edges=";
  for (const auto& [u, v] : g.edges()) out << u << "-" << v << " ";
  return out.str();
}

// c S-distinguishing in (G,R), c' S'-distinguishing in (G, R ∪ S), compatible
// ⇒ c ∪ c' is (S ∪ S')-distinguishing in (G,R). Checked against brute force.
inline Tally union_distinguishing(std::size_t wanted, std::uint64_t seed) {
  Tally t;
  Rng rng(seed);
  for (std::size_t attempt = 0; t.cases < wanted && attempt < 100 * wanted; ++attempt) {
    const std::size_t n = 3 + rng.below(5);
    const Graph g = random_connected_graph(n, rng);
    VertexSet roots;
    if (rng.chance(1, 3)) roots.push_back(static_cast<Vertex>(rng.below(n)));
    const BoundaryRootedGraph base(g, roots);
    const auto c = random_partial(n, 2, rng);
    const VertexSet s = random_subset(fixed_points(stabiliser(base, c), n), rng);
    const BoundaryRootedGraph lifted(g, set_union(roots, s));
    PartialColouring c2(n, 2);
    for (std::size_t v = 0; v < n; ++v) {
      const auto x = static_cast<Vertex>(v);
      if (!rng.chance(1, 2)) continue;
      c2.assign(x, c.is_coloured(x) ? c.colour(x) : static_cast<Colour>(rng.below(2)));
    }
    const VertexSet s2 = random_subset(fixed_points(stabiliser(lifted, c2), n), rng);
    if (s.empty() && s2.empty()) continue;
    ++t.cases;
    const auto u = union_colouring(c, c2);
    const VertexSet both = set_union(s, s2);
    const bool fast = is_S_distinguishing(base, u, both);
    const bool brute = oracle::s_distinguishing(base, u, both);
    if (!fast || !brute) t.fail("union not (S u S')-distinguishing on " + graph_tag(g));
  }
  return t;
}

// A chain that verify_chain accepts has a distinguishing limit (checked by brute force).
inline Tally chain_limit(std::size_t wanted, std::uint64_t seed) {
  Tally t;
  Rng rng(seed);
  for (std::size_t attempt = 0; t.cases < wanted && attempt < 100 * wanted; ++attempt) {
    const std::size_t n = 2 + rng.below(6);
    const BoundaryRootedGraph g(random_connected_graph(n, rng));
    std::vector<PartialColouring> chain;
    std::vector<VertexSet> sets;
    PartialColouring c(n, 3);
    while (true) {
      for (std::size_t v = 0; v < n; ++v) {
        const auto x = static_cast<Vertex>(v);
        if (!c.is_coloured(x) && rng.chance(1, 3)) c.assign(x, static_cast<Colour>(rng.below(3)));
      }
      chain.push_back(c);
      sets.push_back(random_subset(fixed_points(stabiliser(g, c), n), rng));
      if (c.is_total()) break;
    }
    // Make the sets cover V whenever the final colouring allows it.
    sets.back() = fixed_points(stabiliser(g, c), n);
    const auto rep = verify_chain(g, chain, sets);
    if (!rep.ok) continue;
    ++t.cases;
    const auto limit = oracle::stabiliser(g, chain.back());
    if (limit.size() != 1 || !rep.limit_distinguishing) {
      t.fail("accepted chain with non-distinguishing limit on " + graph_tag(g.graph));
    }
  }
  return t;
}

// Orbits of size ≤ 3 under the stabiliser of a domain-preserving colouring: edges
// between any two are empty, complete, a matching or a 6-cycle; uncommon
// neighbourship is symmetric; matching/6-cycle bijections conjugate the action.
inline Tally orbit_links(std::size_t wanted, std::uint64_t seed) {
  Tally t;
  Rng rng(seed);
  for (std::size_t attempt = 0; t.cases < wanted && attempt < 200 * wanted; ++attempt) {
    const std::size_t n = 4 + rng.below(6);
    const Graph g = random_connected_graph(n, rng);
    VertexSet roots;
    if (rng.chance(1, 2)) roots.push_back(static_cast<Vertex>(rng.below(n)));
    const BoundaryRootedGraph brg(g, roots);
    const auto full = enumerate_automorphisms(brg);
    if (full.size() < 2) continue;
    // Colour whole Aut-orbits so the colouring is domain preserving.
    VertexSet all(n);
    for (std::size_t v = 0; v < n; ++v) all[v] = static_cast<Vertex>(v);
    PartialColouring c(n, 2);
    for (const auto& orbit : orbits(full, all)) {
      if (!rng.chance(1, 3)) continue;
      for (Vertex v : orbit) c.assign(v, static_cast<Colour>(rng.below(2)));
    }
    const auto stab = stabiliser(brg, c);
    if (!stab.is_group) {
      t.fail("colouring built from orbits is not domain preserving");
      continue;
    }
    std::vector<tucker::MovingTuple> small;
    for (const auto& m : tucker::moving_tuples(brg, c, stab)) {
      if (m.size() >= 2 && m.size() <= 3) small.push_back(m);
    }
    if (small.size() < 2) continue;
    ++t.cases;
    try {
      for (std::size_t i = 0; i < small.size(); ++i) {
        for (std::size_t j = 0; j < small.size(); ++j) {
          if (i == j) continue;
          const auto link = tucker::classify_link(g, small[i], small[j]);
          const bool ij = !set_intersection(tucker::uncommon_neighbours(brg, small[i]),
                                            small[j].members).empty();
          const bool ji = !set_intersection(tucker::uncommon_neighbours(brg, small[j]),
                                            small[i].members).empty();
          if (ij != ji) t.fail("uncommon neighbourship not symmetric on " + graph_tag(g));
          if (ij != link.bijection.has_value()) {
            t.fail("uncommon neighbours without a bijection on " + graph_tag(g));
          }
          if (link.bijection && !tucker::conjugation_holds(stab, *link.bijection)) {
            t.fail("conjugation identity fails on " + graph_tag(g));
          }
        }
      }
      tucker::sync_classes(brg, small);
    } catch (const StructuralViolation& e) {
      t.fail(std::string(e.what()) + " on " + graph_tag(g));
    }
  }
  return t;
}

// Healthy c, extension c' whose new vertices are not symptoms of c' ⇒ c' healthy.
inline Tally healthy_extension(std::size_t wanted, std::uint64_t seed) {
  Tally t;
  Rng rng(seed);
  for (std::size_t attempt = 0; t.cases < wanted && attempt < 500 * wanted; ++attempt) {
    const std::size_t n = 4 + rng.below(9);
    const Graph g = random_connected_graph(n, rng);
    VertexSet roots, boundary;
    for (std::size_t v = 0; v < n; ++v) {
      if (rng.chance(1, 6)) roots.push_back(static_cast<Vertex>(v));
      if (rng.chance(1, 6)) boundary.push_back(static_cast<Vertex>(v));
    }
    const BoundaryRootedGraph brg(g, roots, boundary);
    // As in the construction, R is always inside the domain.
    auto c = random_partial(n, 2, rng, 1, 3);
    for (Vertex r : roots) {
      if (!c.is_coloured(r)) c.assign(r, static_cast<Colour>(rng.below(2)));
    }
    if (!tucker::is_healthy(brg, c)) continue;
    PartialColouring ext = c;
    VertexSet added;
    for (std::size_t v = 0; v < n; ++v) {
      const auto x = static_cast<Vertex>(v);
      if (!ext.is_coloured(x) && rng.chance(1, 3)) {
        ext.assign(x, static_cast<Colour>(rng.below(2)));
        added.push_back(x);
      }
    }
    if (added.empty()) continue;
    if (!set_intersection(tucker::symptoms(brg, ext), added).empty()) continue;
    ++t.cases;
    if (!tucker::is_healthy(brg, ext)) t.fail("unhealthy extension on " + graph_tag(g));
  }
  return t;
}

// Healthy increasing chains (taken from two-colouring runs on random Δ ≤ 5 graphs):
// every link and the final colouring are healthy, and every colour-0 component of the
// final colouring that avoids R and has no vertex of internal degree ≥ 4 is sealed
// and does not reach B.
inline Tally healthy_limit(std::size_t wanted, std::uint64_t seed) {
  Tally t;
  Rng rng(seed);
  for (std::size_t attempt = 0; t.cases < wanted && attempt < 50 * wanted; ++attempt) {
    const std::int64_t n = 8 + static_cast<std::int64_t>(rng.below(10));
    const auto g = generate("random_bounded_degree", {n, 3 + static_cast<std::int64_t>(rng.below(3))},
                            rng.next());
    std::optional<tucker::TuckerResult> result;
    try {
      result = tucker::tucker_colouring(g);
    } catch (const Error&) {
      continue;
    }
    const auto& run = *result;
    if (run.chain.empty()) continue;
    ++t.cases;
    for (const auto& c : run.chain) {
      if (!tucker::is_healthy(run.working, c)) t.fail("unhealthy chain link on " + graph_tag(g.graph));
    }
    const auto& last = run.chain.back();
    if (!run.final_healthy) t.fail("unhealthy limit on " + graph_tag(g.graph));
    for (const auto& v : tucker::all_components(run.working, last)) {
      if (last.colour(v.component.front()) != 0) continue;
      if (!set_intersection(v.component, run.working.roots).empty()) continue;
      if (v.reason == tucker::HealthReason::kDegreeFourInside) continue;
      if (v.reason != tucker::HealthReason::kFiniteAndSealed) {
        t.fail("open colour-0 component in limit on " + graph_tag(g.graph));
      }
    }
  }
  return t;
}

}  // namespace props
