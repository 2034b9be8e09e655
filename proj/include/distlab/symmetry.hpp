#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "distlab/colouring.hpp"
#include "distlab/graph.hpp"

namespace distlab {

inline constexpr std::size_t kDefaultAutomorphismCap = 1'000'000;

// A vertex permutation: image[v] is where v goes.
struct Automorphism {
  std::vector<Vertex> image;

  Vertex operator()(Vertex v) const { return image[static_cast<std::size_t>(v)]; }
  bool is_identity() const;
  Automorphism inverse() const;
  // (a * b)(v) = a(b(v))
  friend Automorphism operator*(const Automorphism& a, const Automorphism& b);
  friend auto operator<=>(const Automorphism&, const Automorphism&) = default;
};

Automorphism identity_permutation(std::size_t n);

struct AutomorphismSet {
  // Sorted lexicographically by image; the identity is always first.
  std::vector<Automorphism> elements;
  // True when the set is closed under composition and inverses.
  bool is_group = true;

  std::size_t size() const noexcept { return elements.size(); }
  bool contains(const Automorphism& a) const;
};

struct SearchLimits {
  std::size_t cap = kDefaultAutomorphismCap;       // max elements before CapExceeded
  std::size_t node_budget = 200'000'000;           // max search nodes before BudgetExceeded
};

bool is_automorphism(const Graph& g, const Automorphism& a);
// c(v) == c(a(v)) whenever both are defined.
bool preserves(const PartialColouring& c, const Automorphism& a);

// All automorphisms of g fixing roots ∪ boundary pointwise.
AutomorphismSet enumerate_automorphisms(const BoundaryRootedGraph& g, SearchLimits limits = {});

// All automorphisms of (g, R ∪ B) preserving c where both colours are defined.
// is_group is set iff c is domain preserving.
AutomorphismSet stabiliser(const BoundaryRootedGraph& g, const PartialColouring& c,
                           SearchLimits limits = {});

// Orbit partition of `support`, each orbit sorted, orbits ordered by least member.
// Throws PreconditionError if some element maps support outside itself.
std::vector<VertexSet> orbits(const AutomorphismSet& auts, const VertexSet& support);

std::size_t motion(const Automorphism& a);

// Minimum motion over the nontrivial automorphisms of (g, R ∪ B); nullopt when the
// group is trivial (unbounded motion).
std::optional<std::size_t> min_motion(const BoundaryRootedGraph& g, SearchLimits limits = {});

bool fixes_pointwise(const AutomorphismSet& auts, const VertexSet& s);
bool fixes_setwise(const AutomorphismSet& auts, const VertexSet& s);

}  // namespace distlab
