#include "distlab/delta_bound.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

#include "distlab/errors.hpp"
#include "distlab/lab.hpp"

namespace distlab::delta {

namespace {

bool induces_connected(const Graph& g, const VertexSet& s) {
  if (s.empty()) return false;
  std::vector<char> seen(g.order(), 0);
  std::vector<Vertex> stack{s.front()};
  seen[static_cast<std::size_t>(s.front())] = 1;
  std::size_t reached = 0;
  while (!stack.empty()) {
    const Vertex v = stack.back();
    stack.pop_back();
    ++reached;
    for (Vertex w : g.neighbours(v)) {
      const auto wi = static_cast<std::size_t>(w);
      if (!seen[wi] && contains(s, w)) {
        seen[wi] = 1;
        stack.push_back(w);
      }
    }
  }
  return reached == s.size();
}

bool is_zero(const PartialColouring& c, Vertex v) { return c.at(v) == std::optional<Colour>(0); }

// Every colour-0 path q0..qm with qm in B, q0..q(m-1) outside B, that cannot be
// extended before q0 by a non-boundary colour-0 vertex.
void for_each_zero_ray(const BoundaryRootedGraph& g, const PartialColouring& c, std::size_t budget,
                       std::size_t& examined,
                       const std::function<void(const std::vector<Vertex>&)>& visit) {
  const Graph& gr = g.graph;
  std::vector<char> on_path(gr.order(), 0);
  std::vector<Vertex> reversed;
  std::function<void()> grow = [&]() {
    if (++examined > budget) throw BudgetExceeded(budget);
    const Vertex front = reversed.back();
    bool extended = false;
    for (Vertex w : gr.neighbours(front)) {
      if (!is_zero(c, w) || contains(g.boundary, w) || on_path[static_cast<std::size_t>(w)]) continue;
      extended = true;
      on_path[static_cast<std::size_t>(w)] = 1;
      reversed.push_back(w);
      grow();
      reversed.pop_back();
      on_path[static_cast<std::size_t>(w)] = 0;
    }
    if (!extended) visit(std::vector<Vertex>(reversed.rbegin(), reversed.rend()));
  };
  for (Vertex b : g.boundary) {
    if (!is_zero(c, b)) continue;
    on_path[static_cast<std::size_t>(b)] = 1;
    reversed.assign(1, b);
    grow();
    on_path[static_cast<std::size_t>(b)] = 0;
  }
}

bool satisfies_star(const BoundaryRootedGraph& g, const std::vector<Vertex>& q) {
  const Graph& gr = g.graph;
  const Vertex q0 = q.front();
  if (gr.degree(q0) == 1 && !contains(g.boundary, q0)) return true;
  const VertexSet on_q = make_vertex_set(q);
  for (Vertex w : gr.neighbours(q0)) {
    if (contains(on_q, w)) continue;
    for (std::size_t j = 1; j < q.size(); ++j) {
      if (gr.adjacent(w, q[j])) return true;
    }
  }
  return false;
}

}  // namespace

RootStructure select_root_structure(const BoundaryRootedGraph& g) {
  if (shortest_cycle(g.graph)) return cycle_root_structure(g);
  return leaf_root_structure(g);
}

std::vector<NeighbourhoodClass> neighbourhood_classes(const Graph& g, const VertexSet& s) {
  if (!induces_connected(g, s)) {
    throw PreconditionError("neighbourhood_classes: S must be nonempty and connected");
  }
  std::map<VertexSet, VertexSet> by_anchor;
  for (std::size_t i = 0; i < g.order(); ++i) {
    const auto v = static_cast<Vertex>(i);
    if (contains(s, v)) continue;
    VertexSet anchor;
    for (Vertex w : g.neighbours(v)) {
      if (contains(s, w)) anchor.push_back(w);
    }
    if (!anchor.empty()) by_anchor[anchor].push_back(v);
  }
  std::vector<NeighbourhoodClass> out;
  for (auto& [anchor, members] : by_anchor) out.push_back({members, anchor});
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.members.front() < b.members.front();
  });
  return out;
}

StarCheck check_star_property(const BoundaryRootedGraph& g, const PartialColouring& c,
                              const std::vector<Vertex>& ray, std::size_t budget) {
  StarCheck out;
  for_each_zero_ray(g, c, budget, out.paths_examined, [&](const std::vector<Vertex>& q) {
    if (!out.holds || q == ray || !satisfies_star(g, q)) return;
    out.holds = false;
    out.witness = q;
  });
  return out;
}

DeltaResult delta_minus_one_colouring(const BoundaryRootedGraph& g, DeltaOptions options) {
  const Graph& gr = g.graph;
  const std::size_t delta = gr.max_degree();
  if (delta < 3) {
    throw PreconditionError("(Δ−1)-colouring needs maximum degree at least 3 (got " +
                            std::to_string(delta) + ")");
  }
  RootStructure rs = select_root_structure(g);
  BoundaryRootedGraph working(gr, rs.roots, set_union(g.boundary, g.roots));
  const auto k = static_cast<Colour>(delta - 1);
  const std::size_t n = gr.order();

  PartialColouring c(n, k);
  for (Vertex r : rs.roots) c.assign(r, 0);
  VertexSet s = rs.roots;
  std::vector<std::size_t> timestamp(n, 0);
  const std::vector<std::size_t> dist = bfs_distances(gr, rs.roots);

  DeltaResult out{rs, working, c};
  out.max_degree = delta;
  out.chain.push_back(c);
  out.sets.push_back(s);
  out.every_step_domain_distinguishing = true;
  out.zero_only_in_full_classes = true;

  while (s.size() < n) {
    Vertex v = -1;
    for (std::size_t i = 0; i < n; ++i) {
      if (c.is_coloured(static_cast<Vertex>(i))) continue;
      if (v < 0 || dist[i] < dist[static_cast<std::size_t>(v)]) v = static_cast<Vertex>(i);
    }
    DeltaStep step;
    step.index = out.steps.size() + 1;
    step.v = v;
    for (const auto& cls : neighbourhood_classes(gr, s)) {
      if (contains(cls.members, v)) {
        step.class_members = cls.members;
        step.anchor = cls.anchor_neighbours;
      }
    }
    if (step.class_members.empty()) {
      throw StructuralViolation("closest uncoloured vertex " + std::to_string(v) +
                                " has no neighbour in S");
    }
    if (step.class_members.size() > delta - 1) {
      throw StructuralViolation("class of " + std::to_string(v) + " has " +
                                std::to_string(step.class_members.size()) + " > Δ−1 members");
    }
    const bool full = step.class_members.size() == delta - 1;
    for (std::size_t j = 0; j < step.class_members.size(); ++j) {
      const Vertex u = step.class_members[j];
      Colour col = static_cast<Colour>(j + 1);
      if (full && j + 1 == step.class_members.size()) col = 0;
      c.assign(u, col);
      timestamp[static_cast<std::size_t>(u)] = step.index;
      step.colours_assigned.emplace_back(u, col);
      if (col == 0 && !full) out.zero_only_in_full_classes = false;
    }
    s = set_union(s, step.class_members);
    step.domain_distinguishing = is_domain_distinguishing(working, c, options.limits);
    out.every_step_domain_distinguishing =
        out.every_step_domain_distinguishing && step.domain_distinguishing;
    out.steps.push_back(std::move(step));
    out.chain.push_back(c);
    out.sets.push_back(s);
  }

  out.colouring = c;
  out.timestamp = timestamp;
  out.colours_used = c.colours_used();
  const AutomorphismSet stab = stabiliser(working, c, options.limits);
  out.final_distinguishing = stab.size() == 1;
  if (!out.final_distinguishing) {
    std::ostringstream w;
    const auto& witness = stab.elements[1];
    for (std::size_t i = 0; i < witness.image.size(); ++i) w << (i ? "," : "") << witness.image[i];
    throw StructuralViolation("(Δ−1)-colouring preserved by a nontrivial automorphism [" +
                              w.str() + "]");
  }

  out.no_zero_next_to_roots = true;
  for (Vertex r : rs.roots) {
    for (Vertex w : gr.neighbours(r)) {
      if (!contains(rs.roots, w) && is_zero(c, w)) out.no_zero_next_to_roots = false;
    }
  }

  out.ordering_holds = true;
  std::size_t examined = 0;
  for_each_zero_ray(working, c, options.path_budget, examined, [&](const std::vector<Vertex>& q) {
    if (!set_intersection(make_vertex_set(q), rs.roots).empty()) return;
    for (std::size_t j = 1; j < q.size(); ++j) {
      const auto a = timestamp[static_cast<std::size_t>(q[j - 1])];
      const auto b = timestamp[static_cast<std::size_t>(q[j])];
      if (a >= b) out.ordering_holds = false;
    }
  });
  out.star = check_star_property(working, c, rs.ray, options.path_budget);
  return out;
}

nlohmann::json to_json(const DeltaStep& s) {
  nlohmann::json assigned = nlohmann::json::array();
  for (const auto& [v, col] : s.colours_assigned) assigned.push_back({v, col});
  return {{"i", s.index},
          {"v", s.v},
          {"class_members", s.class_members},
          {"colours_assigned", assigned},
          {"domain_distinguishing", s.domain_distinguishing}};
}

}  // namespace distlab::delta
