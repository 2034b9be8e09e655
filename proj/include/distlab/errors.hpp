#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace distlab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed graph6 / JSON input. `offset` is the byte position of the fault.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " (at byte " + std::to_string(offset) + ")"), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

// Graph or colouring violates a type invariant (self loop, disconnected, colour >= k, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// An operation precondition does not hold for the given input.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Automorphism enumeration produced more elements than the configured cap.
class CapExceeded : public Error {
 public:
  explicit CapExceeded(std::size_t cap)
      : Error("automorphism cap exceeded (cap = " + std::to_string(cap) + ")"), cap_(cap) {}
  std::size_t cap() const noexcept { return cap_; }

 private:
  std::size_t cap_;
};

// Exhaustive search exceeded its node budget.
class BudgetExceeded : public Error {
 public:
  explicit BudgetExceeded(std::size_t budget)
      : Error("search budget exceeded (budget = " + std::to_string(budget) + ")"),
        budget_(budget) {}
  std::size_t budget() const noexcept { return budget_; }

 private:
  std::size_t budget_;
};

// The finite truncation does not support the construction (no path to the boundary,
// motion hypothesis fails, an unhealthy component reaches the boundary, ...).
class TruncationError : public Error {
 public:
  using Error::Error;
};

// Something the constructions rule out structurally happened anyway.
class StructuralViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace distlab
