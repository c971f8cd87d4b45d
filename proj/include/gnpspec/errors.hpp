#pragma once

#include <stdexcept>
#include <string>

namespace gnpspec {

// Malformed input data (edge lists, config files).
class FormatError : public std::runtime_error {
 public:
  explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};

// A structural-analysis pass exceeded its work budget (graph too dense).
class BudgetError : public std::runtime_error {
 public:
  explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

// A bound rule was applied to a subgraph that does not satisfy its
// precondition (e.g. a forest bound on a graph with a cycle). Callers are
// expected to catch this and fall back to an unconditional bound.
class AssumptionError : public std::runtime_error {
 public:
  explicit AssumptionError(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace gnpspec
