#pragma once

#include <stdexcept>
#include <string>

namespace deltaef {

// An exact enumeration would exceed its configured cap; callers downgrade the
// affected check to "undecided" rather than guessing.
struct CapExceededError : std::runtime_error {
  explicit CapExceededError(const std::string& what) : std::runtime_error(what) {}
};

// Exhaustive realization search finished without finding a graph, which at
// desk scale certifies the matroid is not graphic.
struct NotGraphicError : std::runtime_error {
  explicit NotGraphicError(const std::string& what) : std::runtime_error(what) {}
};

// Realization search ran out of budget before exhausting the space.
struct BudgetExceededError : std::runtime_error {
  explicit BudgetExceededError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed instance or formulation input.
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace deltaef
