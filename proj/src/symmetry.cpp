#include "distlab/symmetry.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <numeric>

#include "distlab/errors.hpp"

namespace distlab {

bool Automorphism::is_identity() const {
  for (std::size_t v = 0; v < image.size(); ++v) {
    if (image[v] != static_cast<Vertex>(v)) return false;
  }
  return true;
}

Automorphism Automorphism::inverse() const {
  Automorphism out{std::vector<Vertex>(image.size())};
  for (std::size_t v = 0; v < image.size(); ++v) {
    out.image[static_cast<std::size_t>(image[v])] = static_cast<Vertex>(v);
  }
  return out;
}

Automorphism operator*(const Automorphism& a, const Automorphism& b) {
  Automorphism out{std::vector<Vertex>(b.image.size())};
  for (std::size_t v = 0; v < b.image.size(); ++v) out.image[v] = a(b.image[v]);
  return out;
}

Automorphism identity_permutation(std::size_t n) {
  Automorphism a{std::vector<Vertex>(n)};
  std::iota(a.image.begin(), a.image.end(), 0);
  return a;
}

bool AutomorphismSet::contains(const Automorphism& a) const {
  return std::binary_search(elements.begin(), elements.end(), a);
}

bool is_automorphism(const Graph& g, const Automorphism& a) {
  if (a.image.size() != g.order()) return false;
  std::vector<char> hit(g.order(), 0);
  for (Vertex w : a.image) {
    if (w < 0 || static_cast<std::size_t>(w) >= g.order() || hit[static_cast<std::size_t>(w)]) {
      return false;
    }
    hit[static_cast<std::size_t>(w)] = 1;
  }
  for (const auto& [u, v] : g.edges()) {
    if (!g.adjacent(a(u), a(v))) return false;
  }
  return true;
}

bool preserves(const PartialColouring& c, const Automorphism& a) {
  for (std::size_t i = 0; i < a.image.size(); ++i) {
    const auto v = static_cast<Vertex>(i);
    const auto cv = c.at(v);
    if (!cv) continue;
    const auto cw = c.at(a(v));
    if (cw && *cw != *cv) return false;
  }
  return true;
}

namespace {

// Ordered partition of the vertex set. A cell is identified by the position of its
// first element in `elems`; `end[start]` is one past its last element.
struct Partition {
  std::vector<Vertex> elems;
  std::vector<int> pos;         // vertex -> index in elems
  std::vector<int> cell_of;     // vertex -> start of its cell
  std::vector<int> end;         // cell start -> end
  std::size_t cell_count = 0;

  bool discrete() const { return cell_count == elems.size(); }
  int cell_size(int start) const { return end[static_cast<std::size_t>(start)] - start; }
};

using Trace = std::vector<std::int64_t>;

class Refiner {
 public:
  explicit Refiner(const Graph& g) : g_(g), count_(g.order(), 0), queued_(g.order(), 0) {}

  // Refines `p` to the coarsest equitable partition below it, starting from the
  // splitter cells in `queue`. The trace records every split in a form that depends
  // only on cell positions and neighbour counts, so isomorphic inputs give equal traces.
  void refine(Partition& p, std::deque<int> queue, Trace& trace) {
    std::fill(queued_.begin(), queued_.end(), 0);
    for (int s : queue) queued_[static_cast<std::size_t>(s)] = 1;
    std::vector<int> touched_cells;
    std::vector<Vertex> touched_vertices;
    while (!queue.empty()) {
      const int s = queue.front();
      queue.pop_front();
      queued_[static_cast<std::size_t>(s)] = 0;
      touched_cells.clear();
      touched_vertices.clear();
      const int s_end = p.end[static_cast<std::size_t>(s)];
      for (int i = s; i < s_end; ++i) {
        for (Vertex w : g_.neighbours(p.elems[static_cast<std::size_t>(i)])) {
          const auto wi = static_cast<std::size_t>(w);
          if (count_[wi]++ == 0) {
            touched_vertices.push_back(w);
            touched_cells.push_back(p.cell_of[wi]);
          }
        }
      }
      std::sort(touched_cells.begin(), touched_cells.end());
      touched_cells.erase(std::unique(touched_cells.begin(), touched_cells.end()),
                          touched_cells.end());
      for (int t : touched_cells) split(p, t, queue, trace);
      for (Vertex w : touched_vertices) count_[static_cast<std::size_t>(w)] = 0;
    }
  }

 private:
  void split(Partition& p, int t, std::deque<int>& queue, Trace& trace) {
    const int t_end = p.end[static_cast<std::size_t>(t)];
    if (t_end - t == 1) return;
    auto first = p.elems.begin() + t;
    auto last = p.elems.begin() + t_end;
    auto key = [&](Vertex v) { return count_[static_cast<std::size_t>(v)]; };
    const auto [lo, hi] = std::minmax_element(first, last, [&](Vertex a, Vertex b) {
      return key(a) < key(b);
    });
    if (key(*lo) == key(*hi)) return;
    std::sort(first, last, [&](Vertex a, Vertex b) {
      return key(a) != key(b) ? key(a) < key(b) : a < b;
    });
    trace.push_back(-1);
    trace.push_back(t);
    int cell_start = t;
    for (int i = t; i < t_end; ++i) {
      const Vertex v = p.elems[static_cast<std::size_t>(i)];
      p.pos[static_cast<std::size_t>(v)] = i;
      if (i > t && key(v) != key(p.elems[static_cast<std::size_t>(i - 1)])) {
        p.end[static_cast<std::size_t>(cell_start)] = i;
        trace.push_back(key(p.elems[static_cast<std::size_t>(i - 1)]));
        trace.push_back(i - cell_start);
        cell_start = i;
        ++p.cell_count;
        if (!queued_[static_cast<std::size_t>(cell_start)]) {
          queued_[static_cast<std::size_t>(cell_start)] = 1;
          queue.push_back(cell_start);
        }
      }
      p.cell_of[static_cast<std::size_t>(v)] = cell_start;
    }
    p.end[static_cast<std::size_t>(cell_start)] = t_end;
    trace.push_back(key(p.elems[static_cast<std::size_t>(t_end - 1)]));
    trace.push_back(t_end - cell_start);
    if (!queued_[static_cast<std::size_t>(t)]) {
      queued_[static_cast<std::size_t>(t)] = 1;
      queue.push_back(t);
    }
  }

  const Graph& g_;
  std::vector<int> count_;
  std::vector<char> queued_;
};

// Moves v to the front of its cell and makes it a singleton. Returns the position
// of the new singleton cell.
int individualise(Partition& p, Vertex v) {
  const auto vi = static_cast<std::size_t>(v);
  const int start = p.cell_of[vi];
  const int end = p.end[static_cast<std::size_t>(start)];
  const int at = p.pos[vi];
  const Vertex other = p.elems[static_cast<std::size_t>(start)];
  std::swap(p.elems[static_cast<std::size_t>(start)], p.elems[static_cast<std::size_t>(at)]);
  p.pos[static_cast<std::size_t>(other)] = at;
  p.pos[vi] = start;
  p.end[static_cast<std::size_t>(start)] = start + 1;
  p.end[static_cast<std::size_t>(start + 1)] = end;
  for (int i = start + 1; i < end; ++i) {
    p.cell_of[static_cast<std::size_t>(p.elems[static_cast<std::size_t>(i)])] = start + 1;
  }
  ++p.cell_count;
  return start;
}

class AutomorphismSearch {
 public:
  AutomorphismSearch(const BoundaryRootedGraph& g, const PartialColouring* colouring,
                     SearchLimits limits)
      : g_(g.graph), colouring_(colouring), limits_(limits), refiner_(g.graph) {
    const std::size_t n = g_.order();
    if (colouring_ != nullptr && colouring_->vertex_count() != n) {
      throw InvalidArgument("colouring size does not match graph order");
    }
    Partition p;
    p.elems.reserve(n);
    p.pos.assign(n, 0);
    p.cell_of.assign(n, 0);
    p.end.assign(n + 1, 0);
    const VertexSet fixed = g.fixed();
    std::deque<int> queue;
    for (Vertex v : fixed) {
      const int at = static_cast<int>(p.elems.size());
      p.elems.push_back(v);
      p.pos[static_cast<std::size_t>(v)] = at;
      p.cell_of[static_cast<std::size_t>(v)] = at;
      p.end[static_cast<std::size_t>(at)] = at + 1;
      ++p.cell_count;
      queue.push_back(at);
    }
    const int rest = static_cast<int>(p.elems.size());
    for (std::size_t i = 0; i < n; ++i) {
      const auto v = static_cast<Vertex>(i);
      if (contains(fixed, v)) continue;
      p.pos[i] = static_cast<int>(p.elems.size());
      p.cell_of[i] = rest;
      p.elems.push_back(v);
    }
    if (rest < static_cast<int>(n)) {
      p.end[static_cast<std::size_t>(rest)] = static_cast<int>(n);
      ++p.cell_count;
      queue.push_back(rest);
    }
    Trace trace;
    refiner_.refine(p, queue, trace);
    root_ = std::move(p);
  }

  AutomorphismSet run() {
    AutomorphismSet out;
    if (feasible(root_, root_)) descend(root_, root_, out.elements);
    std::sort(out.elements.begin(), out.elements.end());
    if (colouring_ != nullptr) {
      const VertexSet dom = colouring_->domain();
      out.is_group = std::all_of(out.elements.begin(), out.elements.end(),
                                 [&](const Automorphism& a) {
                                   return std::all_of(dom.begin(), dom.end(), [&](Vertex v) {
                                     return colouring_->is_coloured(a(v));
                                   });
                                 });
    }
    return out;
  }

 private:
  bool compatible(Vertex v, Vertex w) const {
    if (colouring_ == nullptr) return true;
    const auto cv = colouring_->at(v);
    const auto cw = colouring_->at(w);
    return !cv || !cw || *cv == *cw;
  }

  // Necessary conditions for a colour-compatible bijection between corresponding cells.
  bool feasible(const Partition& left, const Partition& right) const {
    if (colouring_ == nullptr) return true;
    const auto k = static_cast<std::size_t>(colouring_->colour_count());
    std::vector<int> lc(k + 1), rc(k + 1);
    for (std::size_t start = 0; start < left.elems.size();
         start = static_cast<std::size_t>(left.end[start])) {
      const auto stop = static_cast<std::size_t>(left.end[start]);
      if (stop - start == 1) {
        if (!compatible(left.elems[start], right.elems[start])) return false;
        continue;
      }
      std::fill(lc.begin(), lc.end(), 0);
      std::fill(rc.begin(), rc.end(), 0);
      for (std::size_t i = start; i < stop; ++i) {
        const auto a = colouring_->at(left.elems[i]);
        const auto b = colouring_->at(right.elems[i]);
        ++lc[a ? static_cast<std::size_t>(*a) : k];
        ++rc[b ? static_cast<std::size_t>(*b) : k];
      }
      for (std::size_t col = 0; col < k; ++col) {
        if (lc[col] > rc[col] + rc[k] || rc[col] > lc[col] + lc[k]) return false;
      }
    }
    return true;
  }

  void descend(const Partition& left, const Partition& right, std::vector<Automorphism>& out) {
    if (++nodes_ > limits_.node_budget) throw BudgetExceeded(limits_.node_budget);
    if (left.discrete()) {
      Automorphism a{std::vector<Vertex>(g_.order())};
      for (std::size_t i = 0; i < left.elems.size(); ++i) {
        a.image[static_cast<std::size_t>(left.elems[i])] = right.elems[i];
      }
      if (!is_automorphism(g_, a)) return;
      if (colouring_ != nullptr && !preserves(*colouring_, a)) return;
      out.push_back(std::move(a));
      if (out.size() > limits_.cap) throw CapExceeded(limits_.cap);
      return;
    }
    const auto [target, v] = choose_target(left);
    Partition left_child = left;
    Trace left_trace;
    const int cell = individualise(left_child, v);
    refiner_.refine(left_child, {cell}, left_trace);

    const int stop = right.end[static_cast<std::size_t>(target)];
    std::vector<Vertex> candidates(right.elems.begin() + target, right.elems.begin() + stop);
    std::sort(candidates.begin(), candidates.end());
    for (Vertex w : candidates) {
      if (!compatible(v, w)) continue;
      Partition right_child = right;
      Trace right_trace;
      individualise(right_child, w);
      refiner_.refine(right_child, {cell}, right_trace);
      if (right_trace != left_trace) continue;
      if (!feasible(left_child, right_child)) continue;
      descend(left_child, right_child, out);
    }
  }

  // First non-singleton cell; prefers one holding a coloured vertex so colour
  // constraints bite early. Returns (cell start, vertex to individualise).
  std::pair<int, Vertex> choose_target(const Partition& p) const {
    std::pair<int, Vertex> fallback{-1, -1};
    for (std::size_t start = 0; start < p.elems.size();
         start = static_cast<std::size_t>(p.end[start])) {
      const auto stop = static_cast<std::size_t>(p.end[start]);
      if (stop - start == 1) continue;
      Vertex least = p.elems[start];
      Vertex least_coloured = -1;
      for (std::size_t i = start; i < stop; ++i) {
        const Vertex v = p.elems[i];
        least = std::min(least, v);
        if (colouring_ != nullptr && colouring_->is_coloured(v) &&
            (least_coloured < 0 || v < least_coloured)) {
          least_coloured = v;
        }
      }
      if (least_coloured >= 0) return {static_cast<int>(start), least_coloured};
      if (fallback.first < 0) fallback = {static_cast<int>(start), least};
    }
    return fallback;
  }

  const Graph& g_;
  const PartialColouring* colouring_;
  SearchLimits limits_;
  Refiner refiner_;
  Partition root_;
  std::size_t nodes_ = 0;
};

}  // namespace

AutomorphismSet enumerate_automorphisms(const BoundaryRootedGraph& g, SearchLimits limits) {
  return AutomorphismSearch(g, nullptr, limits).run();
}

AutomorphismSet stabiliser(const BoundaryRootedGraph& g, const PartialColouring& c,
                           SearchLimits limits) {
  return AutomorphismSearch(g, &c, limits).run();
}

std::vector<VertexSet> orbits(const AutomorphismSet& auts, const VertexSet& support) {
  if (support.empty()) return {};
  const std::size_t n = static_cast<std::size_t>(support.back()) + 1;
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& a : auts.elements) {
    for (Vertex v : support) {
      const Vertex w = a(v);
      if (!contains(support, w)) {
        throw PreconditionError("orbits: support not closed (" + std::to_string(v) + " -> " +
                                std::to_string(w) + ")");
      }
      const auto rv = find(static_cast<std::size_t>(v));
      const auto rw = find(static_cast<std::size_t>(w));
      if (rv != rw) parent[std::max(rv, rw)] = std::min(rv, rw);
    }
  }
  std::vector<VertexSet> out;
  std::vector<std::ptrdiff_t> slot(n, -1);
  for (Vertex v : support) {
    const auto r = find(static_cast<std::size_t>(v));
    if (slot[r] < 0) {
      slot[r] = static_cast<std::ptrdiff_t>(out.size());
      out.emplace_back();
    }
    out[static_cast<std::size_t>(slot[r])].push_back(v);
  }
  return out;
}

std::size_t motion(const Automorphism& a) {
  std::size_t moved = 0;
  for (std::size_t v = 0; v < a.image.size(); ++v) {
    if (a.image[v] != static_cast<Vertex>(v)) ++moved;
  }
  return moved;
}

std::optional<std::size_t> min_motion(const BoundaryRootedGraph& g, SearchLimits limits) {
  std::optional<std::size_t> best;
  for (const auto& a : enumerate_automorphisms(g, limits).elements) {
    if (a.is_identity()) continue;
    const std::size_t m = motion(a);
    if (!best || m < *best) best = m;
  }
  return best;
}

bool fixes_pointwise(const AutomorphismSet& auts, const VertexSet& s) {
  return std::all_of(auts.elements.begin(), auts.elements.end(), [&](const Automorphism& a) {
    return std::all_of(s.begin(), s.end(), [&](Vertex v) { return a(v) == v; });
  });
}

bool fixes_setwise(const AutomorphismSet& auts, const VertexSet& s) {
  return std::all_of(auts.elements.begin(), auts.elements.end(), [&](const Automorphism& a) {
    return std::all_of(s.begin(), s.end(), [&](Vertex v) { return contains(s, a(v)); });
  });
}

}  // namespace distlab
