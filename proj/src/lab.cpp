#include "distlab/lab.hpp"

#include <algorithm>
#include <functional>

#include "distlab/errors.hpp"

namespace distlab {

bool compatible(const PartialColouring& a, const PartialColouring& b) {
  if (a.vertex_count() != b.vertex_count()) {
    throw InvalidArgument("colourings belong to different host graphs");
  }
  for (std::size_t i = 0; i < a.vertex_count(); ++i) {
    const auto v = static_cast<Vertex>(i);
    const auto ca = a.at(v);
    const auto cb = b.at(v);
    if (ca && cb && *ca != *cb) return false;
  }
  return true;
}

PartialColouring union_colouring(const PartialColouring& a, const PartialColouring& b) {
  if (a.vertex_count() != b.vertex_count()) {
    throw InvalidArgument("colourings belong to different host graphs");
  }
  PartialColouring out(a.vertex_count(), std::max(a.colour_count(), b.colour_count()));
  for (std::size_t i = 0; i < a.vertex_count(); ++i) {
    const auto v = static_cast<Vertex>(i);
    const auto ca = a.at(v);
    const auto cb = b.at(v);
    if (ca && cb && *ca != *cb) {
      throw InvalidArgument("incompatible colourings: vertex " + std::to_string(v) +
                            " coloured " + std::to_string(*ca) + " and " + std::to_string(*cb));
    }
    if (ca) {
      out.assign(v, *ca);
    } else if (cb) {
      out.assign(v, *cb);
    }
  }
  return out;
}

bool extends(const PartialColouring& later, const PartialColouring& earlier) {
  if (later.vertex_count() != earlier.vertex_count()) return false;
  for (Vertex v : earlier.domain()) {
    const auto c = later.at(v);
    if (!c || *c != earlier.colour(v)) return false;
  }
  return true;
}

bool is_S_distinguishing(const BoundaryRootedGraph& g, const PartialColouring& c,
                         const VertexSet& s, SearchLimits limits) {
  if (s.empty()) return true;
  return fixes_pointwise(stabiliser(g, c, limits), s);
}

bool is_S_preserving(const BoundaryRootedGraph& g, const PartialColouring& c, const VertexSet& s,
                     SearchLimits limits) {
  return fixes_setwise(stabiliser(g, c, limits), s);
}

bool is_domain_distinguishing(const BoundaryRootedGraph& g, const PartialColouring& c,
                              SearchLimits limits) {
  return is_S_distinguishing(g, c, c.domain(), limits);
}

bool is_distinguishing(const Graph& g, const PartialColouring& c, SearchLimits limits) {
  if (c.vertex_count() != g.order() || !c.is_total()) {
    throw PreconditionError("is_distinguishing requires a total colouring");
  }
  return stabiliser(BoundaryRootedGraph(g), c, limits).size() == 1;
}

namespace {

// Depth-first enumeration of colourings of the moved vertices (vertices fixed by the
// whole group carry colour 0; they never influence whether a colouring is
// distinguishing). A prefix is abandoned as soon as some group element shows it is
// not the least representative of its orbit, or preserves every completion.
class OrbitPrunedSolver {
 public:
  OrbitPrunedSolver(const AutomorphismSet& group, std::size_t n, std::size_t budget)
      : budget_(budget), n_(n) {
    std::vector<char> moved(n, 0);
    for (const auto& a : group.elements) {
      if (a.is_identity()) continue;
      elements_.push_back(&a);
      for (std::size_t v = 0; v < n; ++v) {
        if (a.image[v] != static_cast<Vertex>(v)) moved[v] = 1;
      }
    }
    position_.assign(n, -1);
    for (std::size_t v = 0; v < n; ++v) {
      if (moved[v]) {
        position_[v] = static_cast<int>(order_.size());
        order_.push_back(static_cast<Vertex>(v));
      }
    }
    // Largest sequence position each element moves; when the prefix covers it, the
    // element's action on any completion is fully determined.
    for (const auto* a : elements_) {
      int last = 0;
      for (std::size_t i = 0; i < order_.size(); ++i) {
        if ((*a)(order_[i]) != order_[i]) last = static_cast<int>(i);
      }
      support_end_.push_back(last);
    }
  }

  std::optional<PartialColouring> solve(Colour k) {
    k_ = k;
    values_.assign(order_.size(), 0);
    std::vector<std::size_t> active(elements_.size());
    for (std::size_t i = 0; i < active.size(); ++i) active[i] = i;
    if (!extend(0, active)) return std::nullopt;
    std::vector<Colour> colours(n_, 0);
    for (std::size_t i = 0; i < order_.size(); ++i) {
      colours[static_cast<std::size_t>(order_[i])] = values_[i];
    }
    return PartialColouring::total(colours, k);
  }

  std::size_t nodes() const { return nodes_; }

 private:
  enum class Verdict { kGreater, kSmaller, kEqualSoFar, kPreserves };

  // Compares the sequence of c∘a against c over the first `len` positions.
  Verdict compare(std::size_t element, std::size_t len) const {
    const auto& a = *elements_[element];
    for (std::size_t i = 0; i < len; ++i) {
      const auto image_pos = static_cast<std::size_t>(position_[static_cast<std::size_t>(a(order_[i]))]);
      if (image_pos >= len) return Verdict::kEqualSoFar;
      const Colour moved = values_[image_pos];
      if (moved < values_[i]) return Verdict::kSmaller;
      if (moved > values_[i]) return Verdict::kGreater;
    }
    return static_cast<int>(len) > support_end_[element] ? Verdict::kPreserves
                                                         : Verdict::kEqualSoFar;
  }

  bool extend(std::size_t len, const std::vector<std::size_t>& active) {
    if (++nodes_ > budget_) throw BudgetExceeded(budget_);
    std::vector<std::size_t> still_active;
    still_active.reserve(active.size());
    for (std::size_t e : active) {
      switch (compare(e, len)) {
        case Verdict::kSmaller:
        case Verdict::kPreserves:
          return false;
        case Verdict::kEqualSoFar:
          still_active.push_back(e);
          break;
        case Verdict::kGreater:
          break;
      }
    }
    if (len == order_.size()) return true;
    for (Colour c = 0; c < k_; ++c) {
      values_[len] = c;
      if (extend(len + 1, still_active)) return true;
    }
    return false;
  }

  std::size_t budget_;
  std::size_t n_;
  std::vector<const Automorphism*> elements_;
  std::vector<Vertex> order_;
  std::vector<int> position_;
  std::vector<int> support_end_;
  std::vector<Colour> values_;
  Colour k_ = 1;
  std::size_t nodes_ = 0;
};

}  // namespace

DistinguishingResult distinguishing_number(const BoundaryRootedGraph& g, Colour k_max,
                                           SolverOptions options) {
  if (k_max < 1) throw PreconditionError("distinguishing_number: k_max must be at least 1");
  const AutomorphismSet group = enumerate_automorphisms(g, options.limits);
  DistinguishingResult result;
  result.k_max = k_max;
  result.group_order = group.size();
  OrbitPrunedSolver solver(group, g.graph.order(), options.budget);
  for (Colour k = 1; k <= k_max; ++k) {
    if (auto found = solver.solve(k)) {
      result.k = k;
      result.colouring = std::move(found);
      break;
    }
  }
  result.candidates_checked = solver.nodes();
  return result;
}

DistinguishingResult distinguishing_number(const Graph& g, Colour k_max, SolverOptions options) {
  return distinguishing_number(BoundaryRootedGraph(g), k_max, options);
}

ChainReport verify_chain(const BoundaryRootedGraph& g, const std::vector<PartialColouring>& chain,
                         const std::vector<VertexSet>& sets, SearchLimits limits) {
  if (chain.empty()) throw PreconditionError("verify_chain: empty chain");
  if (chain.size() != sets.size()) {
    throw PreconditionError("verify_chain: chain and set lists differ in length");
  }
  for (std::size_t i = 1; i < chain.size(); ++i) {
    if (!extends(chain[i], chain[i - 1])) {
      throw PreconditionError("verify_chain: colouring " + std::to_string(i) +
                              " does not extend its predecessor");
    }
  }
  ChainReport report;
  report.increasing = true;
  VertexSet covered;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    covered = set_union(covered, sets[i]);
    if (!report.first_failure && !is_S_distinguishing(g, chain[i], sets[i], limits)) {
      report.first_failure = i;
    }
  }
  report.covers_vertices = covered.size() == g.graph.order();
  report.ok = report.increasing && report.covers_vertices && !report.first_failure;
  VertexSet all(g.graph.order());
  for (std::size_t v = 0; v < all.size(); ++v) all[v] = static_cast<Vertex>(v);
  report.limit_distinguishing = is_S_distinguishing(g, chain.back(), all, limits);
  if (report.ok && !report.limit_distinguishing) {
    throw StructuralViolation("verify_chain: valid chain whose limit is not distinguishing");
  }
  return report;
}

}  // namespace distlab
