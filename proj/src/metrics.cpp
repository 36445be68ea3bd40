#include "chaincycle/metrics.hpp"

#include <sstream>

namespace chaincycle {

namespace {

long singular_count(const BreakpointGraph& g) {
  long b = 0;
  for (const auto& [id, c] : g.components()) b += c.sing_total();
  return b;
}

// number of nonspecial operations while running stage 1 on a scratch copy;
// every special operation reduces the singular count by exactly one, so
// S = ops - (B_before - B_after)
long simulate_S(const BreakpointGraph& g) {
  BreakpointGraph copy = g;
  long b0 = singular_count(copy);
  ReductionOptions ot;
  ot.stage_mask = 0x01;  // stage 1 only
  ot.cost_gates = false;
  CostModel unit;
  auto r = reduce_graph(copy, unit, ot);
  long s = r.op_count - (b0 - singular_count(copy));
  // cross-check against the closed form kept in the component summaries
  long closed = 0;
  for (const auto& [id, c] : g.components()) closed += c.s_ops;
  if (s != closed)
    throw ClaimTwoViolation("stage-1 simulation disagrees with the closed form S");
  return s;
}

long ops_of(const ReductionResult& r) { return r.op_count; }

}  // namespace

Metrics compute_metrics(const BreakpointGraph& g, const CostModel& cm) {
  cm.validate();
  Metrics m;
  m.eps_a = cm.eps_a();
  m.eps_b = cm.eps_b();
  m.eps = m.eps_a + m.eps_b;

  bool a_chain = false, b_chain = false, a_cycle = false, b_cycle = false;
  long n_a_comps = 0, n_b_comps = 0;  // components containing a-/b-vertices
  for (const auto& [id, c] : g.components()) {
    m.B += c.sing_total();
    if (c.d_flag()) m.D++;
    auto cls = c.cls();
    bool has_a = c.n_sing[0] > 0, has_b = c.n_sing[1] > 0;
    if (has_a) ++n_a_comps;
    if (has_b) ++n_b_comps;
    if (has_a && has_b) m.I_ab = 1;
    if (c.shape == Shape::Cycle) {
      if (cls.content == ContentClass::AOnly) {
        m.C_a++;
        a_cycle = true;
      } else if (cls.content == ContentClass::BOnly) {
        m.C_b++;
        b_cycle = true;
      }
    } else if (c.shape == Shape::Chain || c.shape == Shape::IsoSing) {
      if (cls.content == ContentClass::AOnly) a_chain = true;
      if (cls.content == ContentClass::BOnly) b_chain = true;
    }
    if (has_a) m.I_a = 1;
    if (has_b) m.I_b = 1;
  }
  m.I_ca = a_cycle ? 1 : 0;
  m.I_cb = b_cycle ? 1 : 0;
  // I_pa: an a-loop with no other component carrying an a-vertex
  {
    long a_loops = 0, b_loops = 0;
    for (const auto& [id, c] : g.components()) {
      if (c.shape == Shape::Loop && c.n_sing[0] > 0) ++a_loops;
      if (c.shape == Shape::Loop && c.n_sing[1] > 0) ++b_loops;
    }
    m.I_pa = (a_loops > 0 && n_a_comps == a_loops) ? 1 : 0;
    m.I_pb = (b_loops > 0 && n_b_comps == b_loops) ? 1 : 0;
  }

  m.S = simulate_S(g);

  // P: autonomous op count minus (stages 1-2 + autonomous) op count
  {
    BreakpointGraph c1 = g;
    CostModel unit;
    auto ra = autonomous_reduce(c1, unit);
    BreakpointGraph c2 = g;
    ReductionOptions ot;
    ot.stage_mask = kStagesT;
    ot.cost_gates = false;
    auto rt = reduce_graph(c2, unit, ot);
    m.P = ops_of(ra) - ops_of(rt);
    m.t = ops_of(rt);
  }
  // t1: stage-7 interactions of the actual run under this cost model
  {
    BreakpointGraph c3 = g;
    auto rr = reduce_graph(c3, cm, {});
    m.t1 = rr.t1;
  }

  if (m.t != m.B + m.S + m.D - m.P) {
    std::ostringstream os;
    os << "claim 2 violated: t=" << m.t << " B=" << m.B << " S=" << m.S << " D=" << m.D
       << " P=" << m.P;
    throw ClaimTwoViolation(os.str());
  }

  m.U_a = m.C_a + m.I_ab + m.I_pa;
  m.U_b = m.C_b + m.I_ab + m.I_pb;
  m.A_a = m.C_a - m.I_ca * (1 - m.I_ab);
  m.A_b = m.C_b - m.I_cb * (1 - m.I_ab);

  // case selection on normalized costs with lo <= hi
  Rational wa = cm.wa(), wb = cm.wb();
  m.swapped = wa > wb;
  Rational lo = m.swapped ? wb : wa;
  Rational hi = m.swapped ? wa : wb;
  if (hi <= Rational(2))
    m.case_id = 1;
  else if (lo <= Rational(2))
    m.case_id = 2;
  else
    m.case_id = 3;

  // lo/hi side quantities
  Rational eps_lo = m.swapped ? m.eps_b : m.eps_a;
  Rational eps_hi = m.swapped ? m.eps_a : m.eps_b;
  long U_lo = m.swapped ? m.U_b : m.U_a;
  long U_hi = m.swapped ? m.U_a : m.U_b;
  long A_lo = m.swapped ? m.A_b : m.A_a;
  long A_hi = m.swapped ? m.A_a : m.A_b;
  int I_lo = m.swapped ? m.I_b : m.I_a;
  int I_hi = m.swapped ? m.I_a : m.I_b;

  m.T1 = Rational(m.t) + eps_lo * Rational(U_lo) + eps_hi * Rational(U_hi);
  m.T2 = Rational(m.t) + eps_lo * Rational(U_lo) + eps_hi * Rational(I_hi) + Rational(A_hi);
  m.T3 = Rational(m.t) + eps_lo * Rational(I_lo) + eps_hi * Rational(I_hi) + Rational(A_lo) +
         Rational(A_hi);

  // rank (lo plays the role of a, hi of b)
  bool lo_chain = m.swapped ? b_chain : a_chain;
  bool hi_chain = m.swapped ? a_chain : b_chain;
  bool lo_cycle = m.swapped ? b_cycle : a_cycle;
  bool hi_cycle = m.swapped ? a_cycle : b_cycle;
  bool no_ab = m.I_ab == 0;
  Side lo_side = m.swapped ? Side::B : Side::A;
  Side hi_side = m.swapped ? Side::A : Side::B;
  m.rank = 3;
  if (m.case_id == 1) {
    if (no_ab && lo_chain && hi_chain)
      m.rank = 1;
    else if (no_ab && (lo_chain != hi_chain)) {
      m.rank = 2;
      m.rank2_side = lo_chain ? lo_side : hi_side;
    }
  } else if (m.case_id == 2) {
    bool lo_graph = lo_chain;
    bool hi_graph = hi_chain && hi_cycle;
    if (no_ab && lo_chain && hi_chain && hi_cycle)
      m.rank = 1;
    else if (no_ab && (lo_graph != hi_graph)) {
      m.rank = 2;
      m.rank2_side = lo_graph ? lo_side : hi_side;
    }
  } else {
    bool lo_graph = lo_chain && lo_cycle;
    bool hi_graph = hi_chain && hi_cycle;
    if (no_ab && lo_graph && hi_graph)
      m.rank = 1;
    else if (no_ab && (lo_graph != hi_graph)) {
      m.rank = 2;
      m.rank2_side = lo_graph ? lo_side : hi_side;
    }
  }
  return m;
}

Rational rank_potential(const Metrics& m) {
  Rational eps_lo = m.swapped ? m.eps_b : m.eps_a;
  Side lo_side = m.swapped ? Side::B : Side::A;
  if (m.case_id == 1) {
    if (m.rank == 1) return m.eps;
    if (m.rank == 2) return m.rank2_side == Side::A ? m.eps_a : m.eps_b;
    return Rational(0);
  }
  if (m.case_id == 2) {
    if (m.rank == 1) return eps_lo + Rational(1);
    if (m.rank == 2) return m.rank2_side == lo_side ? eps_lo : Rational(1);
    return Rational(0);
  }
  if (m.rank == 1) return Rational(2);
  if (m.rank == 2) return Rational(1);
  return Rational(0);
}

Rational case_bound(const Metrics& m) {
  if (m.case_id == 1) return m.T1;
  if (m.case_id == 2) return m.T2;
  return m.T3;
}

std::string Metrics::to_text() const {
  std::ostringstream os;
  os << "B=" << B << "\nS=" << S << "\nD=" << D << "\nP=" << P << "\nt=" << t
     << "\nt1=" << t1 << "\nC_a=" << C_a << "\nC_b=" << C_b << "\nI_ab=" << I_ab
     << "\nI_pa=" << I_pa << "\nI_pb=" << I_pb << "\nI_ca=" << I_ca << "\nI_cb=" << I_cb
     << "\nI_a=" << I_a << "\nI_b=" << I_b << "\nU_a=" << U_a << "\nU_b=" << U_b
     << "\nA_a=" << A_a << "\nA_b=" << A_b;
  auto rat = [](const Rational& r) {
    return std::to_string(r.num()) + "/" + std::to_string(r.den());
  };
  os << "\neps_a=" << rat(eps_a) << "\neps_b=" << rat(eps_b) << "\neps=" << rat(eps)
     << "\nT1=" << rat(T1) << "\nT2=" << rat(T2) << "\nT3=" << rat(T3)
     << "\ncase=" << case_id << "\nswapped=" << (swapped ? 1 : 0) << "\nrank=" << rank;
  if (rank == 2) os << "\nrank2_side=" << side_name(rank2_side);
  os << "\n";
  return os.str();
}

}  // namespace chaincycle
