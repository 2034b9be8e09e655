#include "distlab/colouring.hpp"

#include <algorithm>
#include <string>

#include "distlab/errors.hpp"

namespace distlab {

PartialColouring::PartialColouring(std::size_t vertex_count, Colour colour_count)
    : colours_(vertex_count, kUncoloured), colour_count_(colour_count) {
  if (colour_count < 1) throw InvalidArgument("colour count must be at least 1");
}

PartialColouring PartialColouring::total(const std::vector<Colour>& colours, Colour colour_count) {
  PartialColouring c(colours.size(), colour_count);
  for (std::size_t v = 0; v < colours.size(); ++v) c.assign(static_cast<Vertex>(v), colours[v]);
  return c;
}

PartialColouring PartialColouring::from_optional(const std::vector<std::optional<Colour>>& colours,
                                                 Colour colour_count) {
  PartialColouring c(colours.size(), colour_count);
  for (std::size_t v = 0; v < colours.size(); ++v) {
    if (colours[v]) c.assign(static_cast<Vertex>(v), *colours[v]);
  }
  return c;
}

std::size_t PartialColouring::index(Vertex v) const {
  if (v < 0 || static_cast<std::size_t>(v) >= colours_.size()) {
    throw InvalidArgument("vertex " + std::to_string(v) + " outside colouring domain");
  }
  return static_cast<std::size_t>(v);
}

Colour PartialColouring::colour(Vertex v) const {
  const Colour c = colours_[index(v)];
  if (c == kUncoloured) throw PreconditionError("vertex " + std::to_string(v) + " is uncoloured");
  return c;
}

void PartialColouring::assign(Vertex v, Colour c) {
  if (c < 0 || c >= colour_count_) {
    throw InvalidArgument("colour " + std::to_string(c) + " outside 0.." +
                          std::to_string(colour_count_ - 1));
  }
  colours_[index(v)] = c;
}

VertexSet PartialColouring::domain() const {
  VertexSet out;
  for (std::size_t v = 0; v < colours_.size(); ++v) {
    if (colours_[v] != kUncoloured) out.push_back(static_cast<Vertex>(v));
  }
  return out;
}

std::size_t PartialColouring::domain_size() const {
  return static_cast<std::size_t>(
      std::count_if(colours_.begin(), colours_.end(), [](Colour c) { return c != kUncoloured; }));
}

std::size_t PartialColouring::colours_used() const {
  std::vector<char> seen(static_cast<std::size_t>(colour_count_), 0);
  for (Colour c : colours_) {
    if (c != kUncoloured) seen[static_cast<std::size_t>(c)] = 1;
  }
  return static_cast<std::size_t>(std::count(seen.begin(), seen.end(), 1));
}

std::vector<std::optional<Colour>> PartialColouring::to_optional() const {
  std::vector<std::optional<Colour>> out(colours_.size());
  for (std::size_t v = 0; v < colours_.size(); ++v) {
    if (colours_[v] != kUncoloured) out[v] = colours_[v];
  }
  return out;
}

}  // namespace distlab
