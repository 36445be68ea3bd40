#pragma once

#include "chaincycle/instance_gen.hpp"
#include "chaincycle/metrics.hpp"
#include "chaincycle/oracle.hpp"
#include "chaincycle/script.hpp"

namespace chaincycle {

struct CheckResult {
  std::string name;
  bool pass = true;
  std::string detail;
};

struct InstanceReport {
  Rational algo_cost;    // normalized
  Rational oracle_cost;  // normalized
  Rational gap;
  long trace_len = 0;
  Metrics metrics;
  std::vector<CheckResult> checks;
  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

// Runs the algorithm and the oracle on one instance and checks every
// applicable guarantee: admissibility, the regime gap bound, the Theorem-3
// lower bounds with the Claim-3 rank refinement, the Lemma-1b cost
// membership, the Lemma-1a operation count, and the script round trip.
InstanceReport verify_instance(const GenomeStructure& a, const GenomeStructure& b,
                               const CostModel& cm, const OracleLimits& limits,
                               bool circular_only = false);

}  // namespace chaincycle
