#pragma once

#include <optional>

#include "chaincycle/ops.hpp"

namespace chaincycle {

struct LimitExceeded : std::runtime_error {
  std::size_t states_explored;
  explicit LimitExceeded(std::size_t n)
      : std::runtime_error("oracle state limit exceeded after " + std::to_string(n) +
                           " states"),
        states_explored(n) {}
};

struct OracleLimits {
  std::size_t max_states = 5'000'000;
  std::optional<Rational> max_cost;  // prune paths above this accumulated cost
};

// Canonical encoding of a graph up to vertex/edge relabeling and block
// contents: a sorted multiset of per-component symbol strings.
std::string canonicalize(const BreakpointGraph& g);

struct OracleResult {
  Rational min_cost;
  std::size_t states_explored = 0;
  // one optimal witness sequence (operand ids refer to the oracle's
  // working graphs)
  std::vector<TraceRecord> witness;
};

// Exact minimum reduction cost by uniform-cost search over canonicalized
// states. Throws LimitExceeded when the state budget runs out.
OracleResult exact_min_cost(const BreakpointGraph& g, const CostModel& cm,
                            const OracleLimits& limits = {});

}  // namespace chaincycle
