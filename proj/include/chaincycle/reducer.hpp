#pragma once

#include "chaincycle/ops.hpp"

namespace chaincycle {

struct NotReducible : std::runtime_error {
  explicit NotReducible(const std::string& w) : std::runtime_error(w) {}
};
struct RuleResultMismatch : std::runtime_error {
  explicit RuleResultMismatch(const std::string& w) : std::runtime_error(w) {}
};

struct ReductionOptions {
  // Marginal-cost gating of the interaction stages. With min(wa,wb) >= 1
  // every gate passes and the run matches the staged algorithm literally;
  // below that, interactions whose standard operations would cost more than
  // the removals they save are skipped.
  bool cost_gates = true;
  std::uint64_t shuffle_seed = 0;  // 0 = smallest-component-id tie-breaks
  bool debug_t = false;            // record/check per-op t decrements (slow)
  // Which stages run. Bit k = stage k+1; stage 5 bit covers 5.1+5.2.
  unsigned stage_mask = 0xFF;
};

constexpr unsigned kStagesAll = 0xFF;
// autonomous reduction: stages 1, 4, 5.2 and 8
constexpr unsigned kStagesAutonomous = 0b10001001;
// the t-defining run: stages 1-2 followed by the autonomous stages
constexpr unsigned kStagesT = 0b10001011;

struct ReductionResult {
  std::vector<TraceRecord> trace;
  Rational total_cost;  // normalized units (w == 1)
  long op_count = 0;
  long t1 = 0;  // number of stage-7 interactions
};

// Reduces g to final form in place. Throws NotReducible / RuleResultMismatch
// on internal inconsistencies.
ReductionResult reduce_graph(BreakpointGraph& g, const CostModel& cm,
                             const ReductionOptions& opt = {});

ReductionResult run_algorithm(const GenomeStructure& a, const GenomeStructure& b,
                              const CostModel& cm, const ReductionOptions& opt = {});

// Stages 1, 4, 5.2 and 8 only (used to define P and t).
ReductionResult autonomous_reduce(BreakpointGraph& g, const CostModel& cm);

// Minimum number of operations reducing g under equal unit costs: the op
// count of stages 1-2 followed by an autonomous reduction, on a scratch copy.
int compute_t(const BreakpointGraph& g);

}  // namespace chaincycle
