#include "chaincycle/verify.hpp"

#include <sstream>

namespace chaincycle {

namespace {

std::string rs(const Rational& r) { return r.str(); }

}  // namespace

InstanceReport verify_instance(const GenomeStructure& a, const GenomeStructure& b,
                               const CostModel& cm, const OracleLimits& limits,
                               bool circular_only) {
  InstanceReport rep;
  BreakpointGraph g = BreakpointGraph::build(a, b);
  rep.metrics = compute_metrics(g, cm);

  BreakpointGraph gr = g;
  auto algo = reduce_graph(gr, cm, {});
  rep.algo_cost = algo.total_cost;
  rep.trace_len = algo.op_count;

  OracleLimits lim = limits;
  if (!lim.max_cost) lim.max_cost = algo.total_cost;  // admissible upper bound
  auto orc = exact_min_cost(g, cm, lim);
  rep.oracle_cost = orc.min_cost;
  rep.gap = rep.algo_cost - rep.oracle_cost;

  auto add = [&](const std::string& name, bool pass, const std::string& detail) {
    rep.checks.push_back({name, pass, detail});
  };

  add("admissible", rep.gap >= Rational(0),
      "algo=" + rs(rep.algo_cost) + " oracle=" + rs(rep.oracle_cost));

  auto regime = cm.regime();
  if (regime == CostModel::Regime::Exact) {
    add("exact_regime_gap0", rep.gap == Rational(0), "gap=" + rs(rep.gap));
  } else if (regime == CostModel::Regime::Bounded) {
    add("bounded_gap_le_2", rep.gap <= Rational(2), "gap=" + rs(rep.gap));
    // corollary: 1 = w_a <= w_b <= 2  ->  gap <= w_b - 1
    Rational wa = cm.wa(), wb = cm.wb();
    Rational lo = wa < wb ? wa : wb, hi = wa < wb ? wb : wa;
    if (lo == Rational(1) && hi <= Rational(2))
      add("corollary_gap_le_whi_minus_1", rep.gap <= hi - Rational(1), "gap=" + rs(rep.gap));
    if (circular_only && rep.metrics.case_id == 1)
      add("corollary_circular_exact", rep.gap == Rational(0), "gap=" + rs(rep.gap));

    // Theorem 3 lower bound and the Claim-3 rank refinement
    Rational bound = case_bound(rep.metrics);
    add("theorem3_lower_bound", rep.oracle_cost >= bound,
        "oracle=" + rs(rep.oracle_cost) + " T=" + rs(bound));
    Rational refined = bound + rank_potential(rep.metrics);
    add("claim3_rank_bound", rep.oracle_cost >= refined,
        "oracle=" + rs(rep.oracle_cost) + " T+pot=" + rs(refined));

    // Lemma 1b cost membership
    {
      const Metrics& m = rep.metrics;
      Rational eps_lo = m.swapped ? m.eps_b : m.eps_a;
      Rational eps_hi = m.swapped ? m.eps_a : m.eps_b;
      std::vector<Rational> set;
      if (m.case_id == 1) {
        set = {m.T1, m.T1 + eps_lo, m.T1 + eps_hi, m.T1 + m.eps};
      } else if (m.case_id == 2) {
        set = {m.T2, m.T2 + eps_lo, m.T2 + Rational(1), m.T2 + eps_lo + Rational(1)};
      } else {
        set = {m.T3, m.T3 + Rational(1), m.T3 + Rational(2)};
      }
      bool member = false;
      std::string txt;
      for (const auto& v : set) {
        if (rep.algo_cost == v) member = true;
        txt += rs(v) + " ";
      }
      add("lemma1b_membership", member, "cost=" + rs(rep.algo_cost) + " in {" + txt + "}");
    }
  }

  // Lemma 1a: trace length = t + t1
  add("lemma1a_opcount", rep.trace_len == rep.metrics.t + algo.t1,
      "ops=" + std::to_string(rep.trace_len) + " t=" + std::to_string(rep.metrics.t) +
          " t1=" + std::to_string(algo.t1));

  // script round trip
  {
    bool ok = false;
    std::string detail;
    try {
      Script s = reconstruct_script(a, b, algo.trace);
      GenomeStructure out = apply_script(a, s);
      ok = structures_equal(out, b) && s.total_cost == algo.total_cost;
      if (!ok) detail = "result mismatch or cost drift";
    } catch (const std::exception& e) {
      detail = e.what();
    }
    add("script_round_trip", ok, detail);
  }

  return rep;
}

}  // namespace chaincycle
