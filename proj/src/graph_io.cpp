#include "distlab/graph_io.hpp"

#include <array>
#include <fstream>
#include <sstream>

#include "distlab/colouring.hpp"
#include "distlab/errors.hpp"

namespace distlab {

namespace {

constexpr std::string_view kGraph6Header = ">>graph6<<";
constexpr unsigned char kBias = 63;
// Beyond this the dense adjacency matrix stops being reasonable.
constexpr std::uint64_t kMaxGraph6Order = 1u << 16;

bool printable(unsigned char b) { return b >= 63 && b <= 126; }

std::string_view strip_newline(std::string_view text) {
  if (!text.empty() && text.back() == '\n') text.remove_suffix(1);
  if (!text.empty() && text.back() == '\r') text.remove_suffix(1);
  return text;
}

}  // namespace

Graph parse_graph6(std::string_view text) {
  text = strip_newline(text);
  std::size_t pos = 0;
  if (text.substr(0, 2) == ">>") {
    if (text.substr(0, kGraph6Header.size()) != kGraph6Header) {
      throw ParseError("graph6: malformed header", 0);
    }
    pos = kGraph6Header.size();
  }
  auto byte_at = [&](std::size_t i) -> unsigned char {
    if (i >= text.size()) throw ParseError("graph6: unexpected end of input", i);
    const auto b = static_cast<unsigned char>(text[i]);
    if (!printable(b)) throw ParseError("graph6: non-printable byte", i);
    return b;
  };

  std::uint64_t n = 0;
  const std::size_t size_offset = pos;
  const unsigned char first = byte_at(pos);
  if (first < 126) {
    n = first - kBias;
    pos += 1;
  } else {
    std::size_t groups = 3;
    pos += 1;
    if (byte_at(pos) == 126) {
      groups = 6;
      pos += 1;
    }
    for (std::size_t i = 0; i < groups; ++i) n = (n << 6) | (byte_at(pos + i) - kBias);
    pos += groups;
    const bool minimal = groups == 3 ? n >= 63 : n >= 258048;
    if (!minimal) throw ParseError("graph6: length field not in its shortest form", size_offset);
  }
  if (n == 0) throw ParseError("graph6: empty graph has no valid Graph value", size_offset);
  if (n > kMaxGraph6Order) throw ParseError("graph6: vertex count too large", size_offset);

  const std::uint64_t bits = n * (n - 1) / 2;
  const std::size_t body = static_cast<std::size_t>((bits + 5) / 6);
  if (text.size() - pos < body) throw ParseError("graph6: adjacency data truncated", text.size());
  if (text.size() - pos > body) throw ParseError("graph6: trailing garbage", pos + body);

  std::vector<Edge> edges;
  std::uint64_t k = 0;
  for (Vertex j = 1; static_cast<std::uint64_t>(j) < n; ++j) {
    for (Vertex i = 0; i < j; ++i, ++k) {
      const unsigned char b = byte_at(pos + static_cast<std::size_t>(k / 6)) - kBias;
      if (b & (1u << (5 - k % 6))) edges.emplace_back(i, j);
    }
  }
  if (body > 0) {
    const unsigned char last = byte_at(pos + body - 1) - kBias;
    const unsigned pad = static_cast<unsigned>(body * 6 - bits);
    if ((last & ((1u << pad) - 1)) != 0) {
      throw ParseError("graph6: non-zero padding bits", pos + body - 1);
    }
  }
  try {
    return Graph(static_cast<std::size_t>(n), edges);
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string("graph6: ") + e.what(), size_offset);
  }
}

std::string emit_graph6(const Graph& g) {
  const std::uint64_t n = g.order();
  std::string out;
  if (n <= 62) {
    out.push_back(static_cast<char>(n + kBias));
  } else {
    const int groups = n <= 258047 ? 3 : 6;
    out.push_back(static_cast<char>(126));
    if (groups == 6) out.push_back(static_cast<char>(126));
    for (int i = groups - 1; i >= 0; --i) {
      out.push_back(static_cast<char>(((n >> (6 * i)) & 0x3F) + kBias));
    }
  }
  unsigned char acc = 0;
  int filled = 0;
  for (Vertex j = 1; static_cast<std::uint64_t>(j) < n; ++j) {
    for (Vertex i = 0; i < j; ++i) {
      acc = static_cast<unsigned char>((acc << 1) | (g.adjacent(i, j) ? 1 : 0));
      if (++filled == 6) {
        out.push_back(static_cast<char>(acc + kBias));
        acc = 0;
        filled = 0;
      }
    }
  }
  if (filled > 0) out.push_back(static_cast<char>((acc << (6 - filled)) + kBias));
  return out;
}

std::vector<Graph> parse_graph6_lines(std::string_view text) {
  std::vector<Graph> out;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const auto line = strip_newline(text.substr(start, end - start));
    if (!line.empty()) {
      try {
        out.push_back(parse_graph6(line));
      } catch (const ParseError& e) {
        throw ParseError(e.what(), start + e.offset());
      }
    }
    start = end + 1;
  }
  return out;
}

nlohmann::json to_json(const BoundaryRootedGraph& g) {
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& [u, v] : g.graph.edges()) edges.push_back({u, v});
  nlohmann::json j{{"n", g.graph.order()},
                   {"edges", std::move(edges)},
                   {"roots", g.roots},
                   {"boundary", g.boundary}};
  if (!g.graph.labels().empty()) j["labels"] = g.graph.labels();
  return j;
}

BoundaryRootedGraph brg_from_json(const nlohmann::json& j) {
  try {
    const auto n = j.at("n").get<std::size_t>();
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw InvalidArgument("edge must be a pair");
      edges.emplace_back(e[0].get<Vertex>(), e[1].get<Vertex>());
    }
    Graph g(n, edges);
    if (j.contains("labels")) g.set_labels(j["labels"].get<std::vector<std::string>>());
    VertexSet roots = j.value("roots", VertexSet{});
    VertexSet boundary = j.value("boundary", VertexSet{});
    return BoundaryRootedGraph(std::move(g), std::move(roots), std::move(boundary));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("graph JSON: ") + e.what(), 0);
  }
}

std::string to_dot(const Graph& g, const DotOptions& options) {
  static constexpr std::array<const char*, 10> kPalette = {
      "white", "black", "red", "royalblue", "gold", "forestgreen",
      "orange", "purple", "cyan", "brown"};
  std::ostringstream out;
  out << "graph " << options.name << " {\n";
  out << "  node [style=filled, fillcolor=lightgrey];\n";
  for (std::size_t i = 0; i < g.order(); ++i) {
    const auto v = static_cast<Vertex>(i);
    out << "  " << v << " [";
    std::string sep;
    if (!g.labels().empty()) {
      out << "label=\"" << g.labels()[i] << "\"";
      sep = ", ";
    }
    if (options.colouring != nullptr && options.colouring->is_coloured(v)) {
      const Colour c = options.colouring->colour(v);
      out << sep << "fillcolor=\"" << kPalette[static_cast<std::size_t>(c) % kPalette.size()]
          << "\", colour_index=" << c;
      if (c == 1) out << ", fontcolor=white";
      sep = ", ";
    }
    if (contains(options.roots, v)) {
      out << sep << "shape=doublecircle";
      sep = ", ";
    } else if (contains(options.boundary, v)) {
      out << sep << "shape=box";
      sep = ", ";
    }
    out << "];\n";
  }
  for (const auto& [u, v] : g.edges()) out << "  " << u << " -- " << v << ";\n";
  out << "}\n";
  return out.str();
}

BoundaryRootedGraph parse_graph_text(std::string_view text) {
  std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) throw ParseError("empty graph input", 0);
  if (text[first] == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(std::string("graph JSON: ") + e.what(), e.byte);
    }
    return brg_from_json(j);
  }
  auto graphs = parse_graph6_lines(text.substr(first));
  if (graphs.empty()) throw ParseError("no graph6 record", first);
  return BoundaryRootedGraph(std::move(graphs.front()));
}

BoundaryRootedGraph load_graph_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open graph file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_graph_text(buf.str());
}

}  // namespace distlab
