#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "distlab/graph.hpp"

namespace distlab {

class PartialColouring;

// graph6: an optional ">>graph6<<" header, the size field, then the upper triangle
// column by column in 6-bit groups. A single trailing newline is accepted.
Graph parse_graph6(std::string_view text);
std::string emit_graph6(const Graph& g);

// One graph per non-empty line.
std::vector<Graph> parse_graph6_lines(std::string_view text);

// JSON graph schema: {"n": int, "edges": [[u,v],...], "roots": [...], "boundary": [...]}
// with optional "labels": [string,...].
nlohmann::json to_json(const BoundaryRootedGraph& g);
BoundaryRootedGraph brg_from_json(const nlohmann::json& j);

struct DotOptions {
  std::string name = "G";
  const PartialColouring* colouring = nullptr;
  VertexSet roots;
  VertexSet boundary;
};

// Graphviz DOT. Coloured vertices get a palette fillcolor indexed by colour;
// roots are drawn as double circles, boundary vertices as boxes.
std::string to_dot(const Graph& g, const DotOptions& options = {});

// Reads a graph file: graph6 (first record) or the JSON schema, decided by content.
BoundaryRootedGraph load_graph_file(const std::string& path);
BoundaryRootedGraph parse_graph_text(std::string_view text);

}  // namespace distlab
