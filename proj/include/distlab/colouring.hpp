#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "distlab/graph.hpp"

namespace distlab {

using Colour = std::int32_t;

// Partial map from vertices of a host graph to colours {0..k-1}.
class PartialColouring {
 public:
  PartialColouring(std::size_t vertex_count, Colour colour_count);

  // Builds a total colouring from one colour per vertex.
  static PartialColouring total(const std::vector<Colour>& colours, Colour colour_count);
  // Builds from per-vertex optional colours (nullopt = uncoloured).
  static PartialColouring from_optional(const std::vector<std::optional<Colour>>& colours,
                                        Colour colour_count);

  std::size_t vertex_count() const noexcept { return colours_.size(); }
  Colour colour_count() const noexcept { return colour_count_; }

  bool is_coloured(Vertex v) const { return colours_[index(v)] != kUncoloured; }
  std::optional<Colour> at(Vertex v) const {
    const Colour c = colours_[index(v)];
    return c == kUncoloured ? std::nullopt : std::optional<Colour>(c);
  }
  // Colour of a coloured vertex; undefined behaviour guarded by an exception.
  Colour colour(Vertex v) const;

  void assign(Vertex v, Colour c);
  void clear(Vertex v) { colours_[index(v)] = kUncoloured; }

  VertexSet domain() const;
  std::size_t domain_size() const;
  bool is_total() const { return domain_size() == vertex_count(); }
  // Number of distinct colours actually used.
  std::size_t colours_used() const;

  std::vector<std::optional<Colour>> to_optional() const;

  friend bool operator==(const PartialColouring& a, const PartialColouring& b) {
    return a.colour_count_ == b.colour_count_ && a.colours_ == b.colours_;
  }

 private:
  static constexpr Colour kUncoloured = -1;
  std::size_t index(Vertex v) const;

  std::vector<Colour> colours_;
  Colour colour_count_;
};

}  // namespace distlab
