#include "distlab/tucker.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

#include "distlab/errors.hpp"

namespace distlab::tucker {

namespace {

std::string describe(const VertexSet& s) {
  std::ostringstream out;
  out << '{';
  for (std::size_t i = 0; i < s.size(); ++i) out << (i ? "," : "") << s[i];
  out << '}';
  return out.str();
}

bool has_root_neighbour(const BoundaryRootedGraph& g, Vertex v) {
  const auto nb = g.graph.neighbours(v);
  return std::any_of(nb.begin(), nb.end(), [&](Vertex u) { return contains(g.roots, u); });
}

VertexSet neighbourhood(const Graph& g, const VertexSet& a) {
  std::vector<Vertex> out;
  for (Vertex v : a) {
    for (Vertex w : g.neighbours(v)) {
      if (!contains(a, w)) out.push_back(w);
    }
  }
  return make_vertex_set(std::move(out));
}

std::size_t neighbours_in(const Graph& g, Vertex v, const VertexSet& a) {
  std::size_t k = 0;
  for (Vertex w : g.neighbours(v)) k += contains(a, w) ? 1 : 0;
  return k;
}

Bijection inverse(const Bijection& f) {
  Bijection out;
  out.reserve(f.size());
  for (const auto& [a, b] : f) out.emplace_back(b, a);
  std::sort(out.begin(), out.end());
  return out;
}

Bijection identity_on(const VertexSet& a) {
  Bijection out;
  for (Vertex v : a) out.emplace_back(v, v);
  return out;
}

std::size_t tuple_index_of(const std::vector<MovingTuple>& tuples, Vertex v) {
  for (std::size_t i = 0; i < tuples.size(); ++i) {
    if (contains(tuples[i].members, v)) return i;
  }
  return tuples.size();
}

// Adjacency of the synchronisation graph over tuples of size 2 or 3, plus the
// bijection attached to every edge. Checks the symmetry part of the trichotomy.
struct SyncGraph {
  std::vector<std::vector<std::size_t>> adjacent;
  std::map<std::pair<std::size_t, std::size_t>, Bijection> link;
};

SyncGraph build_sync_graph(const BoundaryRootedGraph& g, const std::vector<MovingTuple>& tuples) {
  const std::size_t t = tuples.size();
  std::vector<VertexSet> uncommon(t);
  for (std::size_t i = 0; i < t; ++i) {
    if (tuples[i].size() > 3) {
      throw PreconditionError("sync_classes: tuple " + describe(tuples[i].members) +
                              " has more than 3 members");
    }
    uncommon[i] = uncommon_neighbours(g, tuples[i]);
  }
  SyncGraph sg;
  sg.adjacent.resize(t);
  for (std::size_t i = 0; i < t; ++i) {
    for (std::size_t j = 0; j < t; ++j) {
      if (i == j) continue;
      const bool forward = !set_intersection(uncommon[i], tuples[j].members).empty();
      const bool backward = !set_intersection(uncommon[j], tuples[i].members).empty();
      if (forward != backward) {
        throw StructuralViolation("synchronisation is not symmetric between " +
                                  describe(tuples[i].members) + " and " +
                                  describe(tuples[j].members));
      }
      if (!forward) continue;
      const SyncLink l = classify_link(g.graph, tuples[i], tuples[j]);
      if (!l.bijection) {
        throw StructuralViolation("tuples " + describe(tuples[i].members) + " and " +
                                  describe(tuples[j].members) +
                                  " share uncommon neighbours but have no bijection");
      }
      sg.adjacent[i].push_back(j);
      sg.link[{i, j}] = *l.bijection;
    }
  }
  return sg;
}

// Breadth-first from `source`; returns (tuple index, bijection source -> tuple) in
// visiting order, source first.
std::vector<std::pair<std::size_t, Bijection>> sync_reach(const SyncGraph& sg,
                                                          const std::vector<MovingTuple>& tuples,
                                                          std::size_t source) {
  std::vector<std::pair<std::size_t, Bijection>> order;
  std::vector<char> seen(tuples.size(), 0);
  std::vector<Bijection> to(tuples.size());
  std::deque<std::size_t> queue{source};
  seen[source] = 1;
  to[source] = identity_on(tuples[source].members);
  while (!queue.empty()) {
    const std::size_t i = queue.front();
    queue.pop_front();
    order.emplace_back(i, to[i]);
    for (std::size_t j : sg.adjacent[i]) {
      if (seen[j]) continue;
      seen[j] = 1;
      to[j] = compose(sg.link.at({i, j}), to[i]);
      queue.push_back(j);
    }
  }
  return order;
}

}  // namespace

Vertex apply(const Bijection& f, Vertex v) {
  const auto it = std::lower_bound(f.begin(), f.end(), std::make_pair(v, Vertex{-1}));
  if (it == f.end() || it->first != v) {
    throw InvalidArgument("bijection undefined at vertex " + std::to_string(v));
  }
  return it->second;
}

Bijection compose(const Bijection& second, const Bijection& first) {
  Bijection out;
  out.reserve(first.size());
  for (const auto& [a, b] : first) out.emplace_back(a, apply(second, b));
  return out;
}

const char* to_string(HealthReason r) {
  switch (r) {
    case HealthReason::kNotColourZero: return "not-colour-0";
    case HealthReason::kMeetsRoots: return "meets-R";
    case HealthReason::kFiniteAndSealed: return "finite-and-sealed";
    case HealthReason::kDegreeFourInside: return "has-degree-4-inside";
    case HealthReason::kUnhealthy: return "unhealthy";
  }
  return "unknown";
}

VertexSet charted_vertices(const BoundaryRootedGraph& g, const PartialColouring& c) {
  VertexSet out;
  for (std::size_t i = 0; i < g.graph.order(); ++i) {
    const auto v = static_cast<Vertex>(i);
    if (contains(g.roots, v)) continue;
    if (c.is_coloured(v) || has_root_neighbour(g, v)) out.push_back(v);
  }
  return out;
}

std::vector<MovingTuple> moving_tuples(const BoundaryRootedGraph& g, const PartialColouring& c,
                                       const AutomorphismSet& stab) {
  if (!stab.is_group) {
    throw PreconditionError("moving tuples need a domain-preserving colouring");
  }
  std::vector<MovingTuple> out;
  for (auto& orbit : orbits(stab, charted_vertices(g, c))) out.push_back({std::move(orbit)});
  return out;
}

std::vector<MovingTuple> moving_tuples(const BoundaryRootedGraph& g, const PartialColouring& c,
                                       SearchLimits limits) {
  return moving_tuples(g, c, stabiliser(g, c, limits));
}

VertexSet uncommon_neighbours(const BoundaryRootedGraph& g, const MovingTuple& a) {
  VertexSet out;
  for (Vertex v : neighbourhood(g.graph, a.members)) {
    if (contains(g.roots, v)) continue;
    const std::size_t k = neighbours_in(g.graph, v, a.members);
    if (k > 0 && k < a.size()) out.push_back(v);
  }
  return out;
}

SyncLink classify_link(const Graph& g, const MovingTuple& a, const MovingTuple& b) {
  if (a.size() > 3 || b.size() > 3 || a.size() == 0 || b.size() == 0) {
    throw PreconditionError("classify_link: tuples must have 1 to 3 members");
  }
  if (a == b) throw PreconditionError("classify_link: tuples must differ");
  std::vector<std::size_t> deg_a, deg_b;
  std::size_t edges = 0;
  for (Vertex u : a.members) deg_a.push_back(neighbours_in(g, u, b.members));
  for (Vertex w : b.members) deg_b.push_back(neighbours_in(g, w, a.members));
  for (std::size_t d : deg_a) edges += d;

  SyncLink link;
  if (edges == 0) return link;
  if (edges == a.size() * b.size()) {
    link.shape = BipartiteShape::kComplete;
    return link;
  }
  auto all_equal = [](const std::vector<std::size_t>& v, std::size_t x) {
    return std::all_of(v.begin(), v.end(), [&](std::size_t d) { return d == x; });
  };
  Bijection f;
  if (a.size() == b.size() && all_equal(deg_a, 1) && all_equal(deg_b, 1)) {
    link.shape = BipartiteShape::kMatching;
    for (Vertex u : a.members) {
      for (Vertex w : b.members) {
        if (g.adjacent(u, w)) f.emplace_back(u, w);
      }
    }
  } else if (a.size() == 3 && b.size() == 3 && all_equal(deg_a, 2) && all_equal(deg_b, 2)) {
    link.shape = BipartiteShape::kSixCycle;
    for (Vertex u : a.members) {
      for (Vertex w : b.members) {
        if (!g.adjacent(u, w)) f.emplace_back(u, w);
      }
    }
  } else {
    throw StructuralViolation("edges between " + describe(a.members) + " and " +
                              describe(b.members) +
                              " are neither complete bipartite, a matching, nor a 6-cycle");
  }
  link.bijection = std::move(f);
  return link;
}

std::optional<Bijection> sync_bijection(const Graph& g, const MovingTuple& a,
                                        const MovingTuple& b) {
  return classify_link(g, a, b).bijection;
}

SyncClasses sync_classes(const BoundaryRootedGraph& g, const std::vector<MovingTuple>& tuples) {
  const SyncGraph sg = build_sync_graph(g, tuples);
  SyncClasses out;
  out.class_of.assign(tuples.size(), tuples.size());
  out.to_representative.resize(tuples.size());
  for (std::size_t i = 0; i < tuples.size(); ++i) {
    if (out.class_of[i] != tuples.size()) continue;
    const std::size_t id = out.classes.size();
    out.classes.emplace_back();
    for (auto& [j, f] : sync_reach(sg, tuples, i)) {
      out.class_of[j] = id;
      out.classes[id].push_back(j);
      out.to_representative[j] = inverse(f);
    }
    std::sort(out.classes[id].begin(), out.classes[id].end());
  }
  return out;
}

bool conjugation_holds(const AutomorphismSet& stab, const Bijection& f) {
  for (const auto& gamma : stab.elements) {
    for (const auto& [a, b] : f) {
      if (gamma(b) != apply(f, gamma(a))) return false;
    }
  }
  return true;
}

VertexSet monochromatic_component(const Graph& g, const PartialColouring& c, Vertex v) {
  const Colour colour = c.colour(v);
  std::vector<char> seen(g.order(), 0);
  std::vector<Vertex> stack{v}, out;
  seen[static_cast<std::size_t>(v)] = 1;
  while (!stack.empty()) {
    const Vertex u = stack.back();
    stack.pop_back();
    out.push_back(u);
    for (Vertex w : g.neighbours(u)) {
      const auto wi = static_cast<std::size_t>(w);
      if (seen[wi] || c.at(w) != std::optional<Colour>(colour)) continue;
      seen[wi] = 1;
      stack.push_back(w);
    }
  }
  return make_vertex_set(std::move(out));
}

HealthVerdict classify_health(const BoundaryRootedGraph& g, const PartialColouring& c,
                              const VertexSet& component) {
  if (component.empty() || !c.is_coloured(component.front()) ||
      monochromatic_component(g.graph, c, component.front()) != component) {
    throw PreconditionError("classify_health: " + describe(component) +
                            " is not a monochromatic component");
  }
  HealthVerdict v{component, true, HealthReason::kUnhealthy};
  if (c.colour(component.front()) != 0) {
    v.reason = HealthReason::kNotColourZero;
    return v;
  }
  if (!set_intersection(component, g.roots).empty()) {
    v.reason = HealthReason::kMeetsRoots;
    return v;
  }
  const bool reaches_boundary = !set_intersection(component, g.boundary).empty();
  const VertexSet around = neighbourhood(g.graph, component);
  const bool sealed = std::all_of(around.begin(), around.end(),
                                  [&](Vertex u) { return c.is_coloured(u); });
  if (!reaches_boundary && sealed) {
    v.reason = HealthReason::kFiniteAndSealed;
    return v;
  }
  for (Vertex u : component) {
    if (neighbours_in(g.graph, u, component) >= 4) {
      v.reason = HealthReason::kDegreeFourInside;
      return v;
    }
  }
  v.healthy = false;
  return v;
}

std::vector<HealthVerdict> all_components(const BoundaryRootedGraph& g, const PartialColouring& c) {
  std::vector<HealthVerdict> out;
  std::vector<char> seen(g.graph.order(), 0);
  for (Vertex v : c.domain()) {
    if (seen[static_cast<std::size_t>(v)]) continue;
    const VertexSet k = monochromatic_component(g.graph, c, v);
    for (Vertex u : k) seen[static_cast<std::size_t>(u)] = 1;
    out.push_back(classify_health(g, c, k));
  }
  return out;
}

VertexSet symptoms(const BoundaryRootedGraph& g, const PartialColouring& c) {
  std::vector<Vertex> out;
  for (const auto& verdict : all_components(g, c)) {
    if (verdict.healthy) continue;
    const bool infinite = !set_intersection(verdict.component, g.boundary).empty();
    for (Vertex v : verdict.component) {
      const auto nb = g.graph.neighbours(v);
      const bool open = std::any_of(nb.begin(), nb.end(), [&](Vertex u) {
        return !c.is_coloured(u) && !contains(g.roots, u);
      });
      if (infinite || open) out.push_back(v);
    }
  }
  return make_vertex_set(std::move(out));
}

bool is_healthy(const BoundaryRootedGraph& g, const PartialColouring& c) {
  const auto comps = all_components(g, c);
  return std::all_of(comps.begin(), comps.end(), [](const HealthVerdict& v) { return v.healthy; });
}

bool ConditionReport::all() const {
  return std::all_of(holds.begin(), holds.end(), [](bool b) { return b; });
}

std::string ConditionReport::first_failure() const {
  for (std::size_t i = 0; i < holds.size(); ++i) {
    if (!holds[i]) return "C" + std::to_string(i + 1);
  }
  return {};
}

namespace {

BoundaryRootedGraph make_working(const BoundaryRootedGraph& input, const RootStructure& rs) {
  return BoundaryRootedGraph(input.graph, rs.roots, set_union(input.boundary, input.roots));
}

RootStructure checked_roots(const BoundaryRootedGraph& input) {
  if (input.graph.max_degree() > 5) {
    throw PreconditionError("two-colouring construction needs maximum degree at most 5 (got " +
                            std::to_string(input.graph.max_degree()) + ")");
  }
  return cycle_root_structure(input);
}

}  // namespace

TuckerRun::TuckerRun(const BoundaryRootedGraph& input, TuckerOptions options)
    : working_(input.graph), roots_(checked_roots(input)), options_(options) {
  working_ = make_working(input, roots_);
  cycle_set_ = roots_.cycle_set();
  distance_to_cycle_ = bfs_distances(working_.graph, cycle_set_);
}

TuckerState TuckerRun::initial_state() const {
  TuckerState s{1, roots_.roots, PartialColouring(working_.graph.order(), 2), {}, {}};
  for (Vertex r : roots_.roots) s.colouring.assign(r, 0);
  return s;
}

ConditionReport TuckerRun::check_conditions(const TuckerState& state) const {
  const Graph& g = working_.graph;
  const PartialColouring& c = state.colouring;
  const AutomorphismSet stab = stabiliser(working_, c, options_.limits);
  ConditionReport rep;

  rep.holds[0] = fixes_pointwise(stab, state.s);

  // C2: R sits inside one colour-0 component K_R made of R plus pendant vertices.
  {
    bool ok = true;
    std::ostringstream why;
    const VertexSet& r = working_.roots;
    const bool roots_zero = std::all_of(r.begin(), r.end(), [&](Vertex v) {
      return c.at(v) == std::optional<Colour>(0);
    });
    if (!roots_zero) {
      ok = false;
      why << "R not entirely coloured 0";
    } else {
      const VertexSet k = monochromatic_component(g, c, r.front());
      if (!std::includes(k.begin(), k.end(), r.begin(), r.end())) {
        ok = false;
        why << "R split across colour-0 components";
      } else {
        const VertexSet extra = set_difference(k, r);
        const VertexSet r_minus_c = set_difference(r, cycle_set_);
        auto flag = [&](Vertex v, const std::string& msg) {
          ok = false;
          why << msg << " at " << v << "; ";
          if (contains(working_.boundary, v)) rep.c2_involves_boundary = true;
        };
        for (Vertex root : r) {
          if (neighbours_in(g, root, extra) > 1) flag(root, "root with two pendant neighbours");
        }
        for (Vertex v : extra) {
          const auto nb = g.neighbours(v);
          std::vector<Vertex> inside;
          for (Vertex w : nb) {
            if (contains(k, w)) inside.push_back(w);
          }
          if (inside.size() != 1 || !contains(r_minus_c, inside.front())) {
            flag(v, "pendant vertex not attached to exactly one vertex of R - C");
            continue;
          }
          auto open = [&](Vertex u) {
            const auto n2 = g.neighbours(u);
            return std::any_of(n2.begin(), n2.end(), [&](Vertex w) { return !c.is_coloured(w); });
          };
          if (open(v)) flag(v, "pendant vertex with uncoloured neighbours");
          if (open(inside.front())) flag(inside.front(), "root of a pendant with uncoloured neighbours");
        }
      }
    }
    rep.holds[1] = ok;
    rep.c2_detail = why.str();
  }

  rep.holds[2] = is_healthy(working_, c);
  rep.holds[3] = stab.is_group;
  rep.holds[4] = true;  // the domain of a finite colouring is finite

  {
    bool ok = true;
    for (Vertex v : set_difference(state.s, working_.roots)) {
      for (Vertex w : g.neighbours(v)) ok = ok && c.is_coloured(w);
    }
    rep.holds[5] = ok;
  }

  if (stab.is_group) {
    const auto tuples = moving_tuples(working_, c, stab);
    rep.holds[6] = std::all_of(tuples.begin(), tuples.end(),
                               [](const MovingTuple& t) { return t.size() <= 3; });
  } else {
    rep.holds[6] = false;
  }
  return rep;
}

CaseOutcome TuckerRun::apply_case_table(PartialColouring& c, const MovingTuple& a_tuple,
                                        Vertex a) const {
  const Graph& g = working_.graph;
  const VertexSet& members = a_tuple.members;
  if (!contains(members, a)) throw PreconditionError("apply_case_table: a not in A");
  if (members.size() >= 4) {
    throw StructuralViolation("case table reached a moving tuple of size " +
                              std::to_string(members.size()) + ": " + describe(members));
  }
  CaseOutcome out;
  auto paint = [&](Vertex v, Colour col) {
    c.assign(v, col);
    out.assignments.emplace_back(v, col);
  };
  VertexSet open;
  for (Vertex v : neighbourhood(g, members)) {
    if (!c.is_coloured(v)) open.push_back(v);
  }
  if (!open.empty()) {
    VertexSet uncommon;
    for (Vertex v : open) {
      if (contains(working_.roots, v)) continue;
      const std::size_t k = neighbours_in(g, v, members);
      if (k > 0 && k < members.size()) uncommon.push_back(v);
    }
    if (uncommon.empty()) {
      if (open.size() <= 3) {
        out.label = "1A";
      } else if (open.size() == 4) {
        out.label = "1B";
        for (std::size_t i = 0; i < 3; ++i) paint(open[i], 0);
      } else {
        throw StructuralViolation("case 1 with " + std::to_string(open.size()) +
                                  " uncoloured common neighbours at " + describe(members));
      }
    } else {
      std::vector<Vertex> ordered{a};
      for (Vertex m : members) {
        if (m != a) ordered.push_back(m);
      }
      std::vector<std::vector<Vertex>> linked(ordered.size());
      for (Vertex v : uncommon) {
        std::vector<std::size_t> hit, miss;
        for (std::size_t i = 0; i < ordered.size(); ++i) {
          (g.adjacent(v, ordered[i]) ? hit : miss).push_back(i);
        }
        if (hit.size() == 1) {
          linked[hit.front()].push_back(v);
        } else if (ordered.size() == 3 && miss.size() == 1) {
          linked[miss.front()].push_back(v);
        }
      }
      const std::size_t first_count = linked.front().size();
      out.label = first_count == 1 ? "2A" : first_count <= 3 ? "2B" : "2C";
      for (std::size_t i = 0; i < ordered.size(); ++i) {
        const std::size_t count = linked[i].size();
        const std::size_t rank = i + 1;
        std::size_t zeros = 0;
        if (count == 1) {
          zeros = rank == 1 ? 1 : 0;
        } else if (count == 2 || count == 3) {
          zeros = rank - 1;
        } else if (count == 4) {
          zeros = 4 - rank;
        } else if (count > 4) {
          throw StructuralViolation("case 2 with " + std::to_string(count) +
                                    " uncommon neighbours linked to " +
                                    std::to_string(ordered[i]));
        }
        for (std::size_t z = 0; z < zeros; ++z) paint(linked[i][z], 0);
      }
    }
  }
  for (Vertex v : open) {
    if (!c.is_coloured(v)) paint(v, 1);
  }
  return out;
}

void TuckerRun::run_worklist(PartialColouring& c, const MovingTuple& y_tuple, Vertex y,
                             StepRecord& record) const {
  const Graph& g = working_.graph;
  std::set<Vertex> worklist(y_tuple.members.begin(), y_tuple.members.end());
  std::map<Vertex, int> generation;
  for (Vertex v : y_tuple.members) generation[v] = 1;
  std::vector<char> processed(g.order(), 0);
  bool first = true;

  while (!worklist.empty()) {
    const Vertex a = first ? y : *worklist.begin();
    first = false;
    const AutomorphismSet stab = stabiliser(working_, c, options_.limits);
    if (!stab.is_group) {
      throw StructuralViolation("colouring stopped being domain preserving inside the recursion");
    }
    std::vector<Vertex> orbit;
    for (const auto& gamma : stab.elements) orbit.push_back(gamma(a));
    const MovingTuple a_tuple{make_vertex_set(std::move(orbit))};
    record.processed.push_back(a);

    std::vector<std::pair<Vertex, Colour>> fresh;
    for (Vertex v : neighbourhood(g, a_tuple.members)) {
      if (!c.is_coloured(v) && has_root_neighbour(working_, v)) {
        c.assign(v, 1);
        fresh.emplace_back(v, 1);
      }
    }
    CaseOutcome outcome = apply_case_table(c, a_tuple, a);
    if (!outcome.label.empty()) record.cases.push_back(outcome.label);
    fresh.insert(fresh.end(), outcome.assignments.begin(), outcome.assignments.end());
    record.newly_coloured.insert(record.newly_coloured.end(), fresh.begin(), fresh.end());

    for (Vertex m : a_tuple.members) {
      processed[static_cast<std::size_t>(m)] = 1;
      worklist.erase(m);
    }
    const VertexSet sick = symptoms(working_, c);
    const int next_generation = generation.count(a) ? generation[a] + 1 : 2;
    for (const auto& [v, col] : fresh) {
      if (!contains(sick, v) || processed[static_cast<std::size_t>(v)] || worklist.count(v)) {
        continue;
      }
      if (next_generation > 6) {
        throw StructuralViolation("vertex " + std::to_string(v) + " reached generation " +
                                  std::to_string(next_generation));
      }
      worklist.insert(v);
      generation[v] = next_generation;
    }
    for (auto it = worklist.begin(); it != worklist.end();) {
      it = contains(sick, *it) ? std::next(it) : worklist.erase(it);
    }
  }
  for (const auto& [v, gen] : generation) {
    record.generation.emplace_back(v, gen);
    record.max_generation = std::max(record.max_generation, gen);
  }
}

std::pair<TuckerState, StepRecord> TuckerRun::step(const TuckerState& state) const {
  const Graph& g = working_.graph;
  const std::size_t n = g.order();
  if (state.s.size() >= n) throw PreconditionError("tucker step: S already covers V");

  StepRecord record;
  record.index = state.step;

  Vertex x = -1;
  for (std::size_t i = 0; i < n; ++i) {
    const auto v = static_cast<Vertex>(i);
    if (contains(state.s, v)) continue;
    if (x < 0 || distance_to_cycle_[i] < distance_to_cycle_[static_cast<std::size_t>(x)]) x = v;
  }
  record.x = x;

  const PartialColouring& before = state.colouring;
  PartialColouring c = before;
  const AutomorphismSet stab = stabiliser(working_, before, options_.limits);
  if (!stab.is_group) throw StructuralViolation("step input is not domain preserving (C4)");
  const std::vector<MovingTuple> tuples = moving_tuples(working_, before, stab);
  const std::size_t xi = tuple_index_of(tuples, x);
  if (xi == tuples.size()) {
    throw StructuralViolation("next vertex " + std::to_string(x) + " is not charted");
  }
  const MovingTuple x_tuple = tuples[xi];
  record.tuple_size = x_tuple.size();
  if (x_tuple.size() > 3) {
    throw StructuralViolation("moving tuple of size " + std::to_string(x_tuple.size()) +
                              " containing " + std::to_string(x) + " (C7)");
  }

  // Link audit over every pair of small tuples, with the conjugation identity.
  std::vector<MovingTuple> small;
  for (const auto& t : tuples) {
    if (t.size() >= 2) small.push_back(t);
  }
  for (std::size_t i = 0; i < small.size(); ++i) {
    for (std::size_t j = i + 1; j < small.size(); ++j) {
      const SyncLink link = classify_link(g, small[i], small[j]);
      ++record.link_audit_pairs;
      if (link.bijection && !conjugation_holds(stab, *link.bijection)) {
        throw StructuralViolation("conjugation identity fails between " +
                                  describe(small[i].members) + " and " +
                                  describe(small[j].members));
      }
    }
  }

  auto paint = [&](Vertex v, Colour col) {
    if (c.is_coloured(v)) return;
    c.assign(v, col);
    record.newly_coloured.emplace_back(v, col);
  };
  auto paint_open_neighbours = [&](const VertexSet& of, Colour col) {
    for (Vertex v : neighbourhood(g, of)) paint(v, col);
  };
  auto is_uncoloured = [&](const MovingTuple& t, const PartialColouring& col) {
    return std::none_of(t.members.begin(), t.members.end(),
                        [&](Vertex v) { return col.is_coloured(v); });
  };

  if (is_uncoloured(x_tuple, before)) {
    for (Vertex v : x_tuple.members) paint(v, 1);
  }

  const auto nbx = g.neighbours(x);
  const bool x_open = std::any_of(nbx.begin(), nbx.end(), [&](Vertex u) { return !c.is_coloured(u); });

  if (x_tuple.size() == 1 && !x_open) {
    record.branch = "sealed-singleton";
  } else if (x_tuple.size() == 1) {
    record.branch = "singleton-recursion";
    record.witness = x;
    run_worklist(c, x_tuple, x, record);
  } else {
    std::vector<MovingTuple> sync_tuples;
    for (const auto& t : tuples) {
      if (t.size() == 2 || t.size() == 3) sync_tuples.push_back(t);
    }
    const std::size_t source = tuple_index_of(sync_tuples, x);
    const SyncGraph sg = build_sync_graph(working_, sync_tuples);
    const auto reach = sync_reach(sg, sync_tuples, source);
    const VertexSet r_minus_c = set_difference(working_.roots, cycle_set_);

    bool done = false;
    for (const auto& [j, f] : reach) {
      if (j == source) continue;
      const MovingTuple& y_tuple = sync_tuples[j];
      if (!is_uncoloured(y_tuple, before)) continue;
      VertexSet coloured_nb;
      for (Vertex v : neighbourhood(g, y_tuple.members)) {
        if (before.is_coloured(v)) coloured_nb.push_back(v);
      }
      if (coloured_nb.size() != 1 || !contains(r_minus_c, coloured_nb.front())) continue;
      const Vertex r = coloured_nb.front();
      const Vertex y = apply(f, x);
      record.branch = "option-1";
      record.witness = y;
      paint(y, 0);
      for (Vertex v : g.neighbours(r)) paint(v, 1);
      paint_open_neighbours({x}, 1);
      paint_open_neighbours({y}, 1);
      for (Vertex m : y_tuple.members) {
        if (m != y && c.at(m) == std::optional<Colour>(0)) {
          throw StructuralViolation("option 1 left a second colour-0 vertex in the tuple of " +
                                    std::to_string(y));
        }
      }
      done = true;
      break;
    }

    if (!done) {
      for (const auto& [j, f] : reach) {
        const MovingTuple& y_tuple = sync_tuples[j];
        bool uncharted_uncommon = false;
        for (Vertex v : uncommon_neighbours(working_, y_tuple)) {
          if (!c.is_coloured(v) && !has_root_neighbour(working_, v)) uncharted_uncommon = true;
        }
        if (!uncharted_uncommon) continue;
        const Vertex y = apply(f, x);
        record.branch = "option-2";
        record.witness = y;
        if (j != source) paint_open_neighbours(x_tuple.members, 1);
        if (is_uncoloured(y_tuple, c)) {
          for (Vertex v : y_tuple.members) paint(v, 1);
        }
        run_worklist(c, y_tuple, y, record);
        done = true;
        break;
      }
    }
    if (!done) {
      throw TruncationError("truncation/motion hypothesis violated: moving tuple " +
                            describe(x_tuple.members) +
                            " has no synchronised tuple offering either claim option");
    }
  }

  TuckerState next{state.step + 1, set_union(state.s, {x}), std::move(c), {}, record.generation};
  record.conditions = check_conditions(next);
  const auto& h = record.conditions.holds;
  if (!record.conditions.all()) {
    const bool only_boundary_c2 =
        !h[1] && record.conditions.c2_involves_boundary &&
        std::count(h.begin(), h.end(), false) == 1;
    if (!only_boundary_c2) {
      std::string what = "step " + std::to_string(record.index) + " (x = " + std::to_string(x) +
                         ") broke " + record.conditions.first_failure();
      if (!h[1]) what += ": " + record.conditions.c2_detail;
      if (!h[2]) {
        for (const auto& v : all_components(working_, next.colouring)) {
          if (!v.healthy && !set_intersection(v.component, working_.boundary).empty()) {
            throw TruncationError(what + " (unhealthy colour-0 component " + describe(v.component) +
                                  " reaches the boundary)");
          }
        }
      }
      throw StructuralViolation(what);
    }
  }
  return {std::move(next), std::move(record)};
}

bool root_component_shape_ok(const BoundaryRootedGraph& working, const RootStructure& roots,
                             const PartialColouring& c) {
  const Graph& g = working.graph;
  if (roots.ray.empty() || c.at(roots.ray.front()) != std::optional<Colour>(0)) return false;
  const VertexSet k = monochromatic_component(g, c, roots.ray.front());
  if (!std::includes(k.begin(), k.end(), roots.roots.begin(), roots.roots.end())) return false;
  const VertexSet r_minus_c = set_difference(roots.roots, roots.cycle_set());
  for (Vertex v : set_difference(k, roots.roots)) {
    std::vector<Vertex> inside;
    for (Vertex w : g.neighbours(v)) {
      if (contains(k, w)) inside.push_back(w);
    }
    if (inside.size() != 1 || !contains(r_minus_c, inside.front())) return false;
  }
  return true;
}

TuckerResult tucker_colouring(const BoundaryRootedGraph& g, TuckerOptions options) {
  TuckerRun run(g, options);
  const auto motion_floor = min_motion(g, options.limits);
  if (motion_floor && *motion_floor < options.motion_threshold) {
    throw PreconditionError("minimum motion " + std::to_string(*motion_floor) +
                            " is below the threshold " + std::to_string(options.motion_threshold));
  }

  TuckerState state = run.initial_state();
  TuckerResult result{run.root_structure(), run.working(), state.colouring, {}, {}, {}, {},
                      motion_floor};
  result.initial_conditions = run.check_conditions(state);
  if (!result.initial_conditions.all()) {
    throw TruncationError("initial state breaks " + result.initial_conditions.first_failure() +
                          " on this truncation");
  }
  result.chain.push_back(state.colouring);
  result.sets.push_back(state.s);

  const std::size_t n = g.graph.order();
  while (state.s.size() < n) {
    auto [next, record] = run.step(state);
    result.max_generation = std::max(result.max_generation, record.max_generation);
    result.steps.push_back(std::move(record));
    state = std::move(next);
    result.chain.push_back(state.colouring);
    result.sets.push_back(state.s);
  }

  result.colouring = state.colouring;
  if (!result.colouring.is_total()) {
    throw StructuralViolation("construction finished with uncoloured vertices");
  }
  const AutomorphismSet stab = stabiliser(run.working(), result.colouring, options.limits);
  result.final_stabiliser_size = stab.size();
  result.final_distinguishing = stab.size() == 1;
  if (!result.final_distinguishing) {
    const auto& witness = stab.elements[1];
    std::ostringstream w;
    for (std::size_t v = 0; v < witness.image.size(); ++v) w << (v ? "," : "") << witness.image[v];
    throw StructuralViolation("final colouring preserved by a nontrivial automorphism [" +
                              w.str() + "]");
  }
  result.final_healthy = is_healthy(run.working(), result.colouring);
  result.root_component_shape = root_component_shape_ok(run.working(), run.root_structure(),
                                                        result.colouring);
  return result;
}

nlohmann::json to_json(const ConditionReport& r) {
  nlohmann::json j;
  for (std::size_t i = 0; i < r.holds.size(); ++i) j["C" + std::to_string(i + 1)] = r.holds[i];
  if (!r.c2_detail.empty()) j["C2_detail"] = r.c2_detail;
  if (r.c2_involves_boundary) j["C2_involves_boundary"] = true;
  return j;
}

nlohmann::json to_json(const StepRecord& r) {
  nlohmann::json coloured = nlohmann::json::array();
  for (const auto& [v, col] : r.newly_coloured) coloured.push_back({v, col});
  nlohmann::json generations = nlohmann::json::object();
  for (const auto& [v, gen] : r.generation) generations[std::to_string(v)] = gen;
  nlohmann::json j{{"i", r.index},
                   {"x", r.x},
                   {"tuple_size", r.tuple_size},
                   {"branch", r.branch},
                   {"case_applied", r.cases},
                   {"newly_coloured", coloured},
                   {"worklist", r.processed},
                   {"generations", generations},
                   {"max_generation", r.max_generation},
                   {"link_audit_pairs", r.link_audit_pairs},
                   {"conditions", to_json(r.conditions)}};
  if (r.witness) j["y"] = *r.witness;
  return j;
}

}  // namespace distlab::tucker
