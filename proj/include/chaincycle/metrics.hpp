#pragma once

#include "chaincycle/reducer.hpp"

namespace chaincycle {

struct ClaimTwoViolation : std::runtime_error {
  explicit ClaimTwoViolation(const std::string& w) : std::runtime_error(w) {}
};

struct Metrics {
  long B = 0;  // singular vertices
  long S = 0;  // nonspecial operations in stage 1
  long D = 0;  // chains of types 1a, 1b, 3a, 3b and 3
  long P = 0;  // autonomous ops minus (stage 1-2 + autonomous) ops
  long t = 0;
  long t1 = 0;
  long C_a = 0, C_b = 0;  // a-/b-cycles (not loops)
  int I_ab = 0, I_pa = 0, I_pb = 0, I_ca = 0, I_cb = 0, I_a = 0, I_b = 0;
  long U_a = 0, U_b = 0, A_a = 0, A_b = 0;
  Rational eps_a, eps_b, eps;
  Rational T1, T2, T3;
  int case_id = 1;      // 1..3, on normalized costs with lo <= hi
  bool swapped = false; // true when w_del > w_ins (roles exchanged)
  int rank = 3;
  Side rank2_side = Side::A;  // valid when rank == 2

  std::string to_text() const;  // key=value lines
};

Metrics compute_metrics(const BreakpointGraph& g, const CostModel& cm);

// Case-specific potential of the graph's rank: the Claim-3 surcharge over
// T_case. The triangle inequality reads
//   cost(op) >= Phi(G) - Phi(op(G))  with  Phi = T_case + potential.
Rational rank_potential(const Metrics& m);

// The T bound selected by the case (T1, T2 or T3).
Rational case_bound(const Metrics& m);

}  // namespace chaincycle
