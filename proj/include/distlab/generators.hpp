#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "distlab/graph.hpp"

namespace distlab {

// mt19937_64 with hand-rolled bounded draws, so a seed yields the same instances
// under any standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t next() { return engine_(); }
  // Uniform in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);
  // True with probability num/den.
  bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }

 private:
  std::mt19937_64 engine_;
};

// Mixes an index into a base seed (splitmix64 finaliser).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

using Params = std::vector<std::int64_t>;

//   cycle(n)  complete(n)  complete_bipartite(r[, s])  petersen  star(k)
//   cycle_with_boundary_tail(n, len)   truncated_regular_tree(d, depth)
//   grid(w, h)   random_bounded_degree(n, Δ)   delta_tightness(Δ, tail)
//   hairy_cycle(n, t, len)   tree_with_base_cycle(d, depth)
// Throws InvalidArgument for an unknown family or bad parameters.
BoundaryRootedGraph generate(const std::string& family, const Params& params, std::uint64_t seed = 0);
std::vector<std::string> family_names();

// Connected G(n, p) sample with p drawn per call; used by the oracle tests.
Graph random_connected_graph(std::size_t n, Rng& rng);
// Any simple graph on n vertices (may be disconnected); edges listed u < v.
std::vector<Edge> random_edge_set(std::size_t n, Rng& rng);

}  // namespace distlab
