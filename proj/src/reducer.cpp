#include "chaincycle/reducer.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace chaincycle {

namespace {

using TypeMask = std::uint32_t;

constexpr TypeMask tm(ChainType t) { return TypeMask(1) << int(t); }

// families from the source taxonomy
const TypeMask F_1a = tm(ChainType::O1a);
const TypeMask F_1b = tm(ChainType::O1b);
const TypeMask F_2a = tm(ChainType::O2a_star) | tm(ChainType::O2a_prime);
const TypeMask F_2b = tm(ChainType::O2b_star) | tm(ChainType::O2b_prime);
const TypeMask F_3a = tm(ChainType::O3a_star) | tm(ChainType::O3a_prime);
const TypeMask F_3b = tm(ChainType::O3b_star) | tm(ChainType::O3b_prime);
const TypeMask F_2as = tm(ChainType::O2a_star);
const TypeMask F_2ap = tm(ChainType::O2a_prime);
const TypeMask F_2bs = tm(ChainType::O2b_star);
const TypeMask F_2bp = tm(ChainType::O2b_prime);
const TypeMask F_3as = tm(ChainType::O3a_star);
const TypeMask F_3ap = tm(ChainType::O3a_prime);
const TypeMask F_3bs = tm(ChainType::O3b_star);
const TypeMask F_3bp = tm(ChainType::O3b_prime);
const TypeMask F_e1a = tm(ChainType::E1a_star) | tm(ChainType::E1a_prime);
const TypeMask F_e1b = tm(ChainType::E1b_star) | tm(ChainType::E1b_prime);
const TypeMask F_e1as = tm(ChainType::E1a_star);
const TypeMask F_e1ap = tm(ChainType::E1a_prime);
const TypeMask F_e1bs = tm(ChainType::E1b_star);
const TypeMask F_e1bp = tm(ChainType::E1b_prime);
const TypeMask F_2 = tm(ChainType::E2_star) | tm(ChainType::E2_prime);
const TypeMask F_2s = tm(ChainType::E2_star);
const TypeMask F_2p = tm(ChainType::E2_prime);
const TypeMask F_3 = tm(ChainType::E3);

// ---------- predicted summaries for planning ----------

struct PredComp {
  // enough of a CompInfo to classify and cost a predicted chain
  int runs = 0;
  Side first = Side::A;
  bool h0 = false, h1 = false;
  int n_sing[2] = {0, 0};
  ChainType type() const {
    ResidualSummary r{runs, first, h0, h1};
    return classify_residual(r);
  }
  int size() const { return runs - (h0 ? 1 : 0) - (h1 ? 1 : 0); }
};

struct EndDesc {
  bool hanging = false;  // end is a singular vertex (or odd prefix)
  Side run_side = Side::A;
};

EndDesc end_desc(const CompInfo& c, int which) {
  EndDesc d;
  d.hanging = which == 0 ? c.res.hang0 : c.res.hang1;
  d.run_side = which == 0 ? c.res.first_side : c.res.last_side();
  return d;
}

PredComp pred_of(const CompInfo& c) {
  PredComp p;
  p.runs = c.res.runs;
  p.first = c.res.first_side;
  p.h0 = c.res.hang0;
  p.h1 = c.res.hang1;
  p.n_sing[0] = c.n_sing[0];
  p.n_sing[1] = c.n_sing[1];
  return p;
}

enum class Tpl { T1, T2, T3, T4, T5, T6 };

struct CombinePlan {
  Tpl tpl;
  bool swap_roles;  // operate with roles (x,y) swapped
  int ex, ey;       // seam end of x and y
  PredComp merged;
  // split pieces: side of a 1'-piece (T6), or none
  std::optional<Side> piece_side;
  int ops;  // 1, or 2 when a conventional edge must be cut off (T2)
};

}  // namespace

// ============================ the reducer ============================

namespace {

struct Reducer {
  BreakpointGraph& g;
  CostModel cm;  // normalized: wa(), wb()
  ReductionOptions opt;
  ReductionResult out;
  Rational wa, wb;
  bool any_gate_skip = false;
  std::deque<std::int32_t> conv_queue;  // conventional edges awaiting cut-off

  Reducer(BreakpointGraph& g_, const CostModel& cm_, const ReductionOptions& o)
      : g(g_), cm(cm_), opt(o), wa(cm_.wa()), wb(cm_.wb()) {}

  Rational w(Side s) const { return s == Side::A ? wa : wb; }

  std::uint64_t rank(std::int64_t id) const {
    if (!opt.shuffle_seed) return std::uint64_t(id);
    std::uint64_t z = opt.shuffle_seed ^ (std::uint64_t(id) * 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // ---- accounting ----
  static long bsd(const CompInfo& c) {
    return c.sing_total() + c.s_ops + (c.d_flag() ? 1 : 0);
  }

  long bsd_of(std::int64_t id) const { return bsd(g.comp(id)); }

  // ---- cost forms for gating ----
  Rational rem_route_cost(const CompInfo& c) const {
    Rational base = Rational(c.n_sing[0]) * wa + Rational(c.n_sing[1]) * wb;
    if (c.shape == Shape::Chain) {
      long sz = std::max(c.size, 0);
      return base + Rational((sz + 1) / 2);
    }
    if (c.shape == Shape::Cycle) return base + Rational(c.size / 2 - 1);
    return base;  // loop / iso singular
  }

  Rational close_cycle_cost(int na, int nb, long ops) const {
    // ops to reach 2-cycles plus the final removals (one per present side)
    Rational r = Rational(ops);
    if (na > 0) r = r - Rational(1) + wa;
    if (nb > 0) r = r - Rational(1) + wb;
    return r;
  }

  Rational close_route_cost(const CompInfo& c) const {
    switch (c.shape) {
      case Shape::IsoConv: return Rational(0);
      case Shape::IsoSing:
      case Shape::Loop: return w(c.res.runs ? c.res.first_side : g.verts[c.endv[0]].side);
      case Shape::Cycle:
        if (c.is_final()) return Rational(0);
        return close_cycle_cost(c.n_sing[0], c.n_sing[1], bsd(c));
      case Shape::Chain: break;
    }
    if (c.size <= 0) {
      // no circularization: plain removals
      return Rational(c.n_sing[0]) * wa + Rational(c.n_sing[1]) * wb;
    }
    long ops = bsd(c);
    int na = c.n_sing[0], nb = c.n_sing[1];
    Rational extra(0);
    if (c.size % 2 == 0 && c.res.hang0 && c.res.hang1) {
      // even chain with two hanging ends: the closing SM splits off a
      // 1'-piece whose singular is removed separately
      Side piece = piece_side_for_even_close(c);
      extra = w(piece);
      if (piece == Side::A) --na; else --nb;
    }
    return close_cycle_cost(na, nb, ops) + extra;
  }

  Side piece_side_for_even_close(const CompInfo& c) const {
    // both ends hanging; detach the cheaper side's end
    Side s0 = c.res.first_side, s1 = c.res.last_side();
    if (s0 == s1) return s0;
    return w(s0) <= w(s1) ? s0 : s1;
  }

  Rational auto_cost(const CompInfo& c) const {
    Rational cr = close_route_cost(c);
    if (!opt.cost_gates) return cr;
    Rational rr = rem_route_cost(c);
    return cr <= rr ? cr : rr;
  }

  Rational auto_cost_pred(const PredComp& p) const {
    return auto_cost(synth(p));
  }

  // ---- trace helpers ----
  std::vector<std::int64_t> do_op(const GraphOp& op, int stage,
                                  std::optional<long> expected_delta,
                                  const std::vector<std::int64_t>& consumed) {
    long before = 0;
    if (expected_delta)
      for (std::int64_t id : consumed) before += bsd_of(id);
    TraceRecord rec;
    rec.step = int(out.trace.size());
    rec.stage = stage;
    rec.cost = op_cost(op, cm, g);
    if (opt.debug_t) rec.t_before = compute_t(g);
    ApplyReport rep = apply_op(g, op, &rec, true);
    if (opt.debug_t) rec.t_after = compute_t(g);
    // collect conventional edges that appeared outside 2-cycles
    for (std::int32_t e : rep.new_edges)
      if (g.edges[e].alive && g.edge_is_conventional(e)) conv_queue.push_back(e);
    if (expected_delta) {
      long after = 0;
      for (std::int64_t id : rep.new_comps) after += bsd_of(id);
      if (after - before != *expected_delta) {
        std::ostringstream os;
        os << "operation delta mismatch at step " << rec.step << " stage " << stage
           << " op " << op_kind_name(op.kind) << ": expected " << *expected_delta
           << " got " << (after - before);
        throw RuleResultMismatch(os.str());
      }
    }
    out.total_cost += rec.cost;
    out.op_count++;
    out.trace.push_back(std::move(rec));
    return rep.new_comps;
  }

  // ---- primitive: cut off one conventional edge (stage-1 move) ----
  // Returns the produced components.
  std::vector<std::int64_t> cut_off(std::int32_t eid, int stage) {
    const Edge& e = g.edges[eid];
    std::int32_t u = e.at[0].v, v = e.at[1].v;
    std::int64_t comp = g.comp_of(u);
    std::int32_t f = g.other_edge(u, eid);
    std::int32_t h = g.other_edge(v, eid);
    GraphOp op;
    if (f >= 0 && h >= 0) {
      op.kind = OpKind::DM;
      op.e1 = f;
      op.e2 = h;
      // choose the pattern whose new edges pair the e-side endpoints (u with
      // v), closing the 2-cycle
      const Edge& fe = g.edges[f];
      bool f0_at_u = fe.at[0].v == u;
      const Edge& he = g.edges[h];
      bool h0_at_v = he.at[0].v == v;
      // pattern 0 pairs f.at[0] with h.at[0]
      op.pattern = (f0_at_u == h0_at_v) ? 0 : 1;
    } else if (f >= 0 || h >= 0) {
      std::int32_t cut_e = f >= 0 ? f : h;
      std::int32_t inner = f >= 0 ? u : v;    // endpoint shared with eid
      std::int32_t outer = f >= 0 ? v : u;    // free end of eid
      op.kind = OpKind::SM;
      op.e1 = cut_e;
      const Edge& ce = g.edges[cut_e];
      op.kept = ce.at[0].v == inner ? 0 : 1;
      op.q = {outer, int(ce.label)};
    } else {
      // isolated conventional edge: close it with the opposite label
      op.kind = OpKind::OM;
      op.label = other(e.label);
      op.p = {u, int(other(e.label))};
      op.q = {v, int(other(e.label))};
    }
    return do_op(op, stage, -1, {comp});
  }

  // drain the conventional-edge queue (edges created by interactions)
  void drain_conv(int stage) {
    while (!conv_queue.empty()) {
      std::int32_t eid = conv_queue.front();
      conv_queue.pop_front();
      if (!g.edges[eid].alive || !g.edge_is_conventional(eid)) continue;
      std::int64_t comp = g.comp_of(g.edges[eid].at[0].v);
      const CompInfo& c = g.comp(comp);
      if (c.is_final()) continue;
      if (c.shape == Shape::Cycle && c.size == 2) continue;
      cut_off(eid, stage);
    }
  }

  // ---- stage 1 ----
  void stage1() {
    for (std::size_t e = 0; e < g.edges.size(); ++e)
      if (g.edges[e].alive && g.edge_is_conventional(std::int32_t(e)))
        conv_queue.push_back(std::int32_t(e));
    drain_conv(1);
  }

  // ---- chain end helpers ----
  struct EndInfo {
    std::int32_t v = -1;       // end vertex
    std::int32_t e = -1;       // its incident edge (-1 for isolated singular)
    bool hanging = false;      // end vertex is singular
    Side run_side = Side::A;   // side of the adjacent singular run
    std::int32_t run_v = -1;   // the singular vertex of that run
  };

  EndInfo end_info(const CompInfo& c, int which) const {
    EndInfo ei;
    if (c.shape == Shape::IsoSing) {
      ei.v = c.endv[0];
      ei.hanging = true;
      ei.run_side = g.verts[ei.v].side;
      ei.run_v = ei.v;
      return ei;
    }
    ei.v = c.endv[which];
    const Vertex& vv = g.verts[ei.v];
    ei.e = vv.slot[0] >= 0 ? vv.slot[0] : vv.slot[1];
    ei.hanging = vv.singular;
    if (vv.singular) {
      ei.run_side = vv.side;
      ei.run_v = ei.v;
    } else {
      ei.run_side = g.edges[ei.e].label;
      ei.run_v = g.peer(ei.e, ei.v).v;
      // post stage 1 the end edge is singular; its far endpoint is the run
      if (!g.verts[ei.run_v].singular)
        throw RuleResultMismatch("conventional edge at chain end during interactions");
    }
    return ei;
  }

  // which physical end (0/1) matches a residual end index: ends are stored
  // in walk order; residual hang flags align with endv order by construction
  // of summarize().

  // ---- combine planning ----
  std::optional<CombinePlan> plan_combine(const CompInfo& x, const CompInfo& y,
                                          TypeMask expected) const {
    // template preference: joins first, then the conventional-OM pair
    static const Tpl order[] = {Tpl::T4, Tpl::T3, Tpl::T1, Tpl::T6, Tpl::T5, Tpl::T2};
    for (bool swap : {false, true}) {
      const CompInfo& cx = swap ? y : x;
      const CompInfo& cy = swap ? x : y;
      for (Tpl tpl : order)
        for (int ex = 0; ex < (cx.shape == Shape::IsoSing ? 1 : 2); ++ex)
          for (int ey = 0; ey < (cy.shape == Shape::IsoSing ? 1 : 2); ++ey) {
            auto plan = try_plan(cx, cy, tpl, ex, ey);
            if (!plan) continue;
            if (!(tm(plan->merged.type()) & expected)) continue;
            plan->swap_roles = swap;
            return plan;
          }
    }
    return std::nullopt;
  }

  std::optional<CombinePlan> try_plan(const CompInfo& x, const CompInfo& y, Tpl tpl,
                                      int ex, int ey) const {
    if (x.res.runs == 0 || y.res.runs == 0) return std::nullopt;
    EndDesc dx = end_desc(x, ex), dy = end_desc(y, ey);
    int mx = x.res.runs, my = y.res.runs;
    bool fx = (ex == 1);  // far end of x is end (1-ex)
    bool fy = (ey == 1);
    Side x_far_first = fx ? x.res.first_side : x.res.last_side();
    bool x_far_h = fx ? x.res.hang0 : x.res.hang1;
    bool y_far_h = fy ? y.res.hang0 : y.res.hang1;

    CombinePlan p;
    p.tpl = tpl;
    p.swap_roles = false;
    p.ex = ex;
    p.ey = ey;
    p.ops = 1;
    p.merged.first = x_far_first;
    p.merged.h0 = x_far_h;
    p.merged.h1 = y_far_h;
    p.merged.n_sing[0] = x.n_sing[0] + y.n_sing[0];
    p.merged.n_sing[1] = x.n_sing[1] + y.n_sing[1];

    auto join_side = [&](Side s) {
      p.merged.n_sing[int(s)] -= 1;
    };

    switch (tpl) {
      case Tpl::T1:
        // OM joining two hanging/isolated singular ends of the same side
        if (!dx.hanging || !dy.hanging || dx.run_side != dy.run_side) return std::nullopt;
        p.merged.runs = mx + my - 1;
        join_side(dx.run_side);
        return p;
      case Tpl::T4:
        // x is a 1'-prime: delete its hanging edge, join its singular into
        // y's end run; y's summary is unchanged
        if (!(x.shape == Shape::Chain && x.res.runs == 1 && x.size == 0 && dx.hanging))
          return std::nullopt;
        if (!dy.hanging || dy.run_side != dx.run_side) return std::nullopt;
        p.merged.runs = my;
        p.merged.first = y.res.first_side;
        p.merged.h0 = y.res.hang0;
        p.merged.h1 = y.res.hang1;
        join_side(dx.run_side);
        return p;
      case Tpl::T3:
        // delete x's extremity edge at a conventional end, join the freed
        // run vertex into y's hanging/isolated end (same side)
        if (dx.hanging || x.shape == Shape::IsoSing) return std::nullopt;
        if (!dy.hanging || dy.run_side != dx.run_side) return std::nullopt;
        p.merged.runs = mx + my - 1;
        join_side(dx.run_side);
        return p;
      case Tpl::T5:
        // delete x's extremity edge, re-join the freed run vertex to y's
        // conventional end of the opposite extremity label
        if (dx.hanging || dy.hanging) return std::nullopt;
        if (x.shape == Shape::IsoSing || y.shape == Shape::IsoSing) return std::nullopt;
        if (dx.run_side == dy.run_side) return std::nullopt;
        p.merged.runs = mx + my;
        return p;
      case Tpl::T2:
        // OM between two conventional ends of equal extremity label; the
        // conventional edge formed is cut off immediately (second op)
        if (dx.hanging || dy.hanging) return std::nullopt;
        if (x.shape == Shape::IsoSing || y.shape == Shape::IsoSing) return std::nullopt;
        if (dx.run_side != dy.run_side) return std::nullopt;
        p.merged.runs = mx + my - 1;
        join_side(dx.run_side);
        p.ops = 2;
        return p;
      case Tpl::T6: {
        // delete x's second edge from a hanging end; the end run splits off
        // as a 1'-piece and the second run joins y's end
        if (!dx.hanging || x.shape == Shape::IsoSing || mx < 2) return std::nullopt;
        Side s2 = other(dx.run_side);
        if (!dy.hanging || dy.run_side != s2) return std::nullopt;
        p.merged.runs = (mx - 1) + my - 1;
        p.merged.first = x_far_first;
        p.merged.h0 = x_far_h;
        p.merged.h1 = y_far_h;
        p.merged.n_sing[int(dx.run_side)] -= 1;  // piece departs
        join_side(s2);
        p.piece_side = dx.run_side;
        return p;
      }
    }
    return std::nullopt;
  }

  // execute a planned combine; returns the id of the merged chain
  std::int64_t exec_combine(std::int64_t xid, std::int64_t yid, const CombinePlan& plan,
                            int stage, std::optional<long> delta0) {
    if (plan.swap_roles) std::swap(xid, yid);
    const CompInfo& x = g.comp(xid);
    const CompInfo& y = g.comp(yid);
    EndInfo ix = end_info(x, plan.ex);
    EndInfo iy = end_info(y, plan.ey);
    GraphOp op;
    switch (plan.tpl) {
      case Tpl::T1: {
        op.kind = OpKind::OM;
        op.label = ix.run_side;
        op.p = *g.free_port(ix.run_v, ix.run_side);
        // the other free port; for an isolated vertex both slots are free
        op.q = [&] {
          auto fp = g.free_port(iy.run_v, iy.run_side);
          if (!fp) throw RuleResultMismatch("T1 target has no free slot");
          return *fp;
        }();
        break;
      }
      case Tpl::T4: {
        op.kind = OpKind::SM;
        op.e1 = ix.e;
        const Edge& e = g.edges[ix.e];
        op.kept = e.at[0].v == ix.run_v ? 0 : 1;
        auto fp = g.free_port(iy.run_v, iy.run_side);
        if (!fp) throw RuleResultMismatch("T4 target has no free slot");
        op.q = *fp;
        break;
      }
      case Tpl::T3: {
        op.kind = OpKind::SM;
        op.e1 = ix.e;  // extremity edge at the conventional end
        const Edge& e = g.edges[ix.e];
        op.kept = e.at[0].v == ix.run_v ? 0 : 1;
        auto fp = g.free_port(iy.run_v, iy.run_side);
        if (!fp) throw RuleResultMismatch("T3 target has no free slot");
        op.q = *fp;
        break;
      }
      case Tpl::T5: {
        op.kind = OpKind::SM;
        op.e1 = ix.e;
        const Edge& e = g.edges[ix.e];
        op.kept = e.at[0].v == ix.run_v ? 0 : 1;
        op.q = {iy.v, int(e.label)};
        break;
      }
      case Tpl::T2: {
        op.kind = OpKind::OM;
        op.label = other(ix.run_side);
        op.p = {ix.v, int(op.label)};
        op.q = {iy.v, int(op.label)};
        break;
      }
      case Tpl::T6: {
        op.kind = OpKind::SM;
        // second edge from the hanging end: the other edge of the adjacent
        // conventional vertex
        std::int32_t pconv = g.peer(ix.e, ix.run_v).v;
        std::int32_t e2 = g.other_edge(pconv, ix.e);
        if (e2 < 0) throw RuleResultMismatch("T6: no second edge");
        op.e1 = e2;
        const Edge& e = g.edges[e2];
        std::int32_t s2 = e.at[0].v == pconv ? e.at[1].v : e.at[0].v;
        op.kept = e.at[0].v == s2 ? 0 : 1;
        auto fp = g.free_port(iy.run_v, iy.run_side);
        if (!fp) throw RuleResultMismatch("T6 target has no free slot");
        op.q = *fp;
        break;
      }
    }
    std::int32_t survivor_a = ix.run_v, survivor_b = iy.run_v;
    do_op(op, stage, delta0, {xid, yid});
    drain_conv(stage);  // T2 cut-off (and any stray conventional edges)
    std::int32_t sv = g.verts[survivor_a].alive ? survivor_a : survivor_b;
    if (!g.verts[sv].alive) throw RuleResultMismatch("combine lost both run vertices");
    std::int64_t merged = g.comp_of(sv);
    ChainType got = g.comp(merged).ctype();
    if (!(tm(got) & tm(plan.merged.type())))
      throw RuleResultMismatch(std::string("combine result type ") + chain_type_name(got) +
                               " != predicted " + chain_type_name(plan.merged.type()));
    return merged;
  }

  // ---------------- interaction rule machinery ----------------

  struct Rule {
    const char* name;
    std::vector<TypeMask> operands;
    // steps reference operand slots (0..n-1) or earlier step results (n+k)
    struct Step {
      int xref, yref;
      TypeMask expected;
    };
    std::vector<Step> steps;
    std::vector<int> consumed;  // operand slots consumed by the steps
  };

  // find comps matching the operand masks (distinct, smallest rank first)
  std::optional<std::vector<std::int64_t>> match_rule(const Rule& r) {
    std::vector<std::int64_t> chosen;
    std::set<std::int64_t> used;
    for (TypeMask m : r.operands) {
      std::int64_t best = -1;
      std::uint64_t best_rank = 0;
      for (const auto& [id, c] : g.components()) {
        if (used.count(id)) continue;
        if (c.shape != Shape::Chain && c.shape != Shape::IsoSing) continue;
        if (!(tm(c.ctype()) & m)) continue;
        std::uint64_t rk = rank(id);
        if (best < 0 || rk < best_rank) {
          best = id;
          best_rank = rk;
        }
      }
      if (best < 0) return std::nullopt;
      chosen.push_back(best);
      used.insert(best);
    }
    return chosen;
  }

  // gate: standard-op cost plus downstream cost of products must not exceed
  // downstream cost of the consumed operands
  bool gate_rule(const Rule& r, const std::vector<std::int64_t>& opnds,
                 std::vector<CombinePlan>* plans_out) {
    // plan all steps on predicted summaries
    std::vector<PredComp> preds;
    std::vector<const CompInfo*> srcs;
    for (std::int64_t id : opnds) srcs.push_back(&g.comp(id));
    Rational op_costs(0);
    Rational products(0);
    std::vector<CombinePlan> plans;
    std::vector<PredComp> interm;
    auto pred_ref = [&](int ref) -> PredComp {
      if (ref < int(opnds.size())) return pred_of(*srcs[ref]);
      return interm[ref - opnds.size()];
    };
    // planning uses live comps for operand refs; intermediate results are
    // planned against synthesized CompInfos
    for (const auto& st : r.steps) {
      CompInfo cx = synth(pred_ref(st.xref));
      CompInfo cy = synth(pred_ref(st.yref));
      auto plan = plan_combine(cx, cy, st.expected);
      if (!plan) return false;  // treated as non-applicable
      op_costs += Rational(plan->ops);
      if (plan->piece_side) products += w(*plan->piece_side);
      interm.push_back(plan->merged);
      plans.push_back(*plan);
    }
    if (!interm.empty()) products += auto_cost_pred(interm.back());
    // intermediate results fully consumed except the last; pieces priced above
    Rational before(0);
    for (int idx : r.consumed) before += auto_cost(*srcs[idx]);
    bool pass = !opt.cost_gates || (op_costs + products <= before);
    if (!pass) any_gate_skip = true;
    if (pass && plans_out) *plans_out = std::move(plans);
    return pass;
  }

  static CompInfo synth(const PredComp& p) {
    CompInfo c;
    c.id = -1;
    c.shape = (p.size() == -1) ? Shape::IsoSing : Shape::Chain;
    c.n_sing[0] = p.n_sing[0];
    c.n_sing[1] = p.n_sing[1];
    c.size = p.size();
    c.res = {p.runs, p.first, p.h0, p.h1};
    return c;
  }

  // run one rule instance; returns true if it fired
  bool fire_rule(const Rule& r, int stage) {
    auto m = match_rule(r);
    if (!m) return false;
    std::vector<CombinePlan> plans;
    if (!gate_rule(r, *m, &plans)) return false;
    // execute steps; intermediates tracked by live comp ids
    std::vector<std::int64_t> refs = *m;
    for (std::size_t k = 0; k < r.steps.size(); ++k) {
      const auto& st = r.steps[k];
      std::int64_t xid = refs[st.xref];
      std::int64_t yid = refs[st.yref];
      // re-plan against live comps (ids may have shifted between steps)
      auto plan = plan_combine(g.comp(xid), g.comp(yid), st.expected);
      if (!plan)
        throw RuleResultMismatch(std::string(r.name) + ": step lost applicability");
      std::int64_t merged = exec_combine(xid, yid, *plan, stage, std::nullopt);
      refs.push_back(merged);
    }
    return true;
  }

  // ---------------- stage 2 ----------------

  std::vector<Rule> stage2_rules() const {
    using S = Rule::Step;
    std::vector<Rule> rs;
    auto add = [&](const char* n, std::vector<TypeMask> ops_,
                   std::vector<S> steps, std::vector<int> cons) {
      rs.push_back({n, std::move(ops_), std::move(steps), std::move(cons)});
    };
    // primes absorb into their fellows
    add("1_b'+2a'=2a'", {F_e1bp, F_2ap}, {{0, 1, F_2ap}}, {0, 1});
    add("1_a'+2b'=2b'", {F_e1ap, F_2bp}, {{0, 1, F_2bp}}, {0, 1});
    add("1_b'+3b'=3b'", {F_e1bp, F_3bp}, {{0, 1, F_3bp}}, {0, 1});
    add("1_a'+3a'=3a'", {F_e1ap, F_3ap}, {{0, 1, F_3ap}}, {0, 1});
    add("1_b'+1_b'=1_b'", {F_e1bp, F_e1bp}, {{0, 1, F_e1bp}}, {0, 1});
    add("1_a'+1_a'=1_a'", {F_e1ap, F_e1ap}, {{0, 1, F_e1ap}}, {0, 1});
    add("1a+1b=1_b*", {F_1a, F_1b}, {{0, 1, F_e1bs | F_e1as}}, {0, 1});
    add("2b+3a=1_a", {F_2b, F_3a}, {{0, 1, F_e1a}}, {0, 1});
    add("2a+3b=1_b", {F_2a, F_3b}, {{0, 1, F_e1b}}, {0, 1});
    add("2+3=1_b*", {F_2, F_3}, {{0, 1, F_e1bs | F_e1as}}, {0, 1});
    add("(1a+2b)+3=1_b*", {F_1a, F_2b, F_3},
        {{0, 1, F_2}, {3, 2, F_e1bs | F_e1as}}, {0, 1, 2});
    add("(1b+2a)+3=1_b*", {F_1b, F_2a, F_3},
        {{0, 1, F_2}, {3, 2, F_e1bs | F_e1as}}, {0, 1, 2});
    add("(1b+3a)+2=1_b*", {F_1b, F_3a, F_2},
        {{0, 1, F_3}, {3, 2, F_e1bs | F_e1as}}, {0, 1, 2});
    add("(1a+3b)+2=1_b*", {F_1a, F_3b, F_2},
        {{0, 1, F_3}, {3, 2, F_e1bs | F_e1as}}, {0, 1, 2});
    add("1a+2=2a*", {F_1a, F_2}, {{0, 1, F_2as}}, {0, 1});
    add("1b+2=2b*", {F_1b, F_2}, {{0, 1, F_2bs}}, {0, 1});
    add("1a+3=3a*", {F_1a, F_3}, {{0, 1, F_3as}}, {0, 1});
    add("1b+3=3b*", {F_1b, F_3}, {{0, 1, F_3bs}}, {0, 1});
    add("(1a+2b)+(1a+3b)=1_b*", {F_1a, F_2b, F_1a, F_3b},
        {{0, 1, F_2}, {2, 3, F_3}, {4, 5, F_e1bs | F_e1as}}, {0, 1, 2, 3});
    add("(1b+2a)+(1b+3a)=1_b*", {F_1b, F_2a, F_1b, F_3a},
        {{0, 1, F_2}, {2, 3, F_3}, {4, 5, F_e1bs | F_e1as}}, {0, 1, 2, 3});
    add("(1a+1a)+2b=2a*", {F_1a, F_1a, F_2b}, {{0, 1, F_2as}}, {0, 1});
    add("(1b+1b)+2a=2b*", {F_1b, F_1b, F_2a}, {{0, 1, F_2bs}}, {0, 1});
    add("(1a+1a)+3b=3a*", {F_1a, F_1a, F_3b}, {{0, 1, F_3as}}, {0, 1});
    add("(1b+1b)+3a=3b*", {F_1b, F_1b, F_3a}, {{0, 1, F_3bs}}, {0, 1});
    add("1a+1a=3a*", {F_1a, F_1a}, {{0, 1, F_3as}}, {0, 1});
    add("1b+1b=3b*", {F_1b, F_1b}, {{0, 1, F_3bs}}, {0, 1});
    add("1a+2b=2", {F_1a, F_2b}, {{0, 1, F_2}}, {0, 1});
    add("1b+2a=2", {F_1b, F_2a}, {{0, 1, F_2}}, {0, 1});
    add("1b+3a=3", {F_1b, F_3a}, {{0, 1, F_3}}, {0, 1});
    add("1a+3b=3", {F_1a, F_3b}, {{0, 1, F_3}}, {0, 1});
    add("(2a+(2b+3))+3=1_b*", {F_2a, F_2b, F_3, F_3},
        {{1, 2, F_1b}, {0, 4, F_2}, {5, 3, F_e1bs | F_e1as}}, {0, 1, 2, 3});
    add("((3a+(3b+2))+2)=1_b*", {F_3a, F_3b, F_2, F_2},
        {{1, 2, F_1b}, {0, 4, F_3}, {5, 3, F_e1bs | F_e1as}}, {0, 1, 2, 3});
    add("(3a+2)+2=2a*", {F_3a, F_2, F_2},
        {{0, 1, F_1a}, {3, 2, F_2as}}, {0, 1, 2});
    add("(3b+2)+2=2b*", {F_3b, F_2, F_2},
        {{0, 1, F_1b}, {3, 2, F_2bs}}, {0, 1, 2});
    add("(2a+3)+3=3a*", {F_2a, F_3, F_3},
        {{0, 1, F_1a}, {3, 2, F_3as}}, {0, 1, 2});
    add("(2b+3)+3=3b*", {F_2b, F_3, F_3},
        {{0, 1, F_1b}, {3, 2, F_3bs}}, {0, 1, 2});
    add("2a+(2b+3)=2*", {F_2a, F_2b, F_3},
        {{1, 2, F_1b}, {0, 3, F_2s}}, {0, 1, 2});
    add("2b+(2a+3)=2*", {F_2b, F_2a, F_3},
        {{1, 2, F_1a}, {0, 3, F_2s}}, {0, 1, 2});
    add("3a+(3b+2)=3", {F_3a, F_3b, F_2},
        {{1, 2, F_1b}, {0, 3, F_3}}, {0, 1, 2});
    add("3b+(3a+2)=3", {F_3b, F_3a, F_2},
        {{1, 2, F_1a}, {0, 3, F_3}}, {0, 1, 2});
    return rs;
  }

  void stage2() {
    auto rules = stage2_rules();
    bool fired = true;
    while (fired) {
      fired = false;
      for (const auto& r : rules) {
        if (fire_rule(r, 2)) {
          fired = true;
          break;
        }
      }
    }
  }

  // ---------------- stage 3 ----------------

  bool absorb_loop(Side s) {
    // a-loop + component with a singular a-vertex = the same component
    std::int64_t loop_id = -1;
    std::uint64_t loop_rank = 0;
    for (const auto& [id, c] : g.components()) {
      if (c.shape != Shape::Loop) continue;
      if (g.verts[c.endv[0]].side != s) continue;
      std::uint64_t rk = rank(id);
      if (loop_id < 0 || rk < loop_rank) {
        loop_id = id;
        loop_rank = rk;
      }
    }
    if (loop_id < 0) return false;
    std::int64_t tgt = -1;
    std::uint64_t tgt_rank = 0;
    for (const auto& [id, c] : g.components()) {
      if (id == loop_id) continue;
      if (c.n_sing[int(s)] == 0) continue;
      std::uint64_t rk = rank(id);
      if (tgt < 0 || rk < tgt_rank) {
        tgt = id;
        tgt_rank = rk;
      }
    }
    if (tgt < 0) return false;
    if (opt.cost_gates && Rational(1) > w(s)) {
      any_gate_skip = true;
      return false;
    }
    const CompInfo& lc = g.comp(loop_id);
    std::int32_t lv = lc.endv[0];
    std::int32_t loop_edge = g.verts[lv].slot[0];
    const CompInfo& tc = g.comp(tgt);
    std::int32_t tv = tc.rep_sing[int(s)];
    GraphOp op;
    if (g.verts[tv].degree() == 2 && !g.verts[tv].has_loop()) {
      op.kind = OpKind::DM;
      op.e1 = loop_edge;
      op.e2 = g.verts[tv].slot[0];
      // pattern pairing loop.at[0] with the target vertex's port
      const Edge& te = g.edges[op.e2];
      op.pattern = te.at[0].v == tv ? 0 : 1;
    } else {
      op.kind = OpKind::SM;
      op.e1 = loop_edge;
      op.kept = 0;
      auto fp = g.free_port(tv, s);
      if (!fp) {
        // loop target: vertex with a loop has no free slot; absorb by DM
        op.kind = OpKind::DM;
        op.e2 = g.verts[tv].slot[0];
        const Edge& te = g.edges[op.e2];
        op.pattern = te.at[0].v == tv ? 0 : 1;
      } else {
        op.q = *fp;
      }
    }
    do_op(op, 3, -1, {loop_id, tgt});
    drain_conv(3);
    return true;
  }

  std::vector<Rule> stage3_rules() const {
    using S = Rule::Step;
    std::vector<Rule> rs;
    auto add = [&](const char* n, std::vector<TypeMask> ops_, std::vector<S> steps,
                   std::vector<int> cons) {
      rs.push_back({n, std::move(ops_), std::move(steps), std::move(cons)});
    };
    add("2'+2'=2a*", {F_2p, F_2p}, {{0, 1, F_2as}}, {0, 1});
    add("2a'+2a'=2a'", {F_2ap, F_2ap}, {{0, 1, F_2ap}}, {0, 1});
    add("2a'+2a*=2a*", {F_2ap, F_2as}, {{0, 1, F_2as}}, {0, 1});
    add("2b'+2b'=2b'", {F_2bp, F_2bp}, {{0, 1, F_2bp}}, {0, 1});
    add("2b'+2b*=2b*", {F_2bp, F_2bs}, {{0, 1, F_2bs}}, {0, 1});
    add("3a'+3a'=3a'", {F_3ap, F_3ap}, {{0, 1, F_3ap}}, {0, 1});
    add("3a'+3a*=3a*", {F_3ap, F_3as}, {{0, 1, F_3as}}, {0, 1});
    add("3b'+3b'=3b'", {F_3bp, F_3bp}, {{0, 1, F_3bp}}, {0, 1});
    add("3b'+3b*=3b*", {F_3bp, F_3bs}, {{0, 1, F_3bs}}, {0, 1});
    add("3a*+3b*=3", {F_3as, F_3bs}, {{0, 1, F_3}}, {0, 1});
    // the prime variant is gated on (a,b)-component presence, handled below
    add("3a'+3b*=3", {F_3ap, F_3bs}, {{0, 1, F_3}}, {0, 1});
    add("3b'+3a*=3", {F_3bp, F_3as}, {{0, 1, F_3}}, {0, 1});
    add("2a'+2b*=2+1a'", {F_2ap, F_2bs}, {{0, 1, F_2}}, {0, 1});
    add("2b'+2a*=2+1b'", {F_2bp, F_2as}, {{0, 1, F_2}}, {0, 1});
    add("3a'+2'=1a", {F_3ap, F_2p}, {{0, 1, F_1a}}, {0, 1});
    add("3a'+2*=1a", {F_3ap, F_2s}, {{0, 1, F_1a}}, {0, 1});
    add("3b'+2'=1b", {F_3bp, F_2p}, {{0, 1, F_1b}}, {0, 1});
    add("3b'+2*=1b", {F_3bp, F_2s}, {{0, 1, F_1b}}, {0, 1});
    add("2a'+3=1a", {F_2ap, F_3}, {{0, 1, F_1a}}, {0, 1});
    add("2b'+3=1b", {F_2bp, F_3}, {{0, 1, F_1b}}, {0, 1});
    add("1a+3a'=1a", {F_1a, F_3ap}, {{0, 1, F_1a}}, {0, 1});
    add("1b+3b'=1b", {F_1b, F_3bp}, {{0, 1, F_1b}}, {0, 1});
    add("1a+2a'=1a", {F_1a, F_2ap}, {{0, 1, F_1a}}, {0, 1});
    add("1b+2b'=1b", {F_1b, F_2bp}, {{0, 1, F_1b}}, {0, 1});
    add("3a'+3=3", {F_3ap, F_3}, {{0, 1, F_3}}, {0, 1});
    add("3b'+3=3", {F_3bp, F_3}, {{0, 1, F_3}}, {0, 1});
    add("2a'+2'=2'", {F_2ap, F_2p}, {{0, 1, F_2p}}, {0, 1});
    add("2a'+2*=2*", {F_2ap, F_2s}, {{0, 1, F_2s}}, {0, 1});
    add("2b'+2'=2'", {F_2bp, F_2p}, {{0, 1, F_2p}}, {0, 1});
    add("2b'+2*=2*", {F_2bp, F_2s}, {{0, 1, F_2s}}, {0, 1});
    add("1a'+1a*=1a*", {F_e1ap, F_e1as}, {{0, 1, F_e1as}}, {0, 1});
    add("1b'+1b*=1b*", {F_e1bp, F_e1bs}, {{0, 1, F_e1bs}}, {0, 1});
    add("1a+1b'=1a", {F_1a, F_e1bp}, {{0, 1, F_1a}}, {0, 1});
    add("1b+1a'=1b", {F_1b, F_e1ap}, {{0, 1, F_1b}}, {0, 1});
    add("1a+1a'=1a", {F_1a, F_e1ap}, {{0, 1, F_1a}}, {0, 1});
    add("1b+1b'=1b", {F_1b, F_e1bp}, {{0, 1, F_1b}}, {0, 1});
    add("2a'+1b*=2a*", {F_2ap, F_e1bs}, {{0, 1, F_2as}}, {0, 1});
    add("2a*+1b'=2a*", {F_2as, F_e1bp}, {{0, 1, F_2as}}, {0, 1});
    add("2b'+1a*=2b*", {F_2bp, F_e1as}, {{0, 1, F_2bs}}, {0, 1});
    add("2b*+1a'=2b*", {F_2bs, F_e1ap}, {{0, 1, F_2bs}}, {0, 1});
    add("3a'+1a*=3a*", {F_3ap, F_e1as}, {{0, 1, F_3as}}, {0, 1});
    add("3a*+1a'=3a*", {F_3as, F_e1ap}, {{0, 1, F_3as}}, {0, 1});
    add("3b'+1b*=3b*", {F_3bp, F_e1bs}, {{0, 1, F_3bs}}, {0, 1});
    add("3b*+1b'=3b*", {F_3bs, F_e1bp}, {{0, 1, F_3bs}}, {0, 1});
    add("3+1a'=3", {F_3, F_e1ap}, {{0, 1, F_3}}, {0, 1});
    add("3+1b'=3", {F_3, F_e1bp}, {{0, 1, F_3}}, {0, 1});
    add("2'+1a'=2'", {F_2p, F_e1ap}, {{0, 1, F_2p}}, {0, 1});
    add("2*+1a'=2*", {F_2s, F_e1ap}, {{0, 1, F_2s}}, {0, 1});
    add("2'+1b'=2'", {F_2p, F_e1bp}, {{0, 1, F_2p}}, {0, 1});
    add("2*+1b'=2*", {F_2s, F_e1bp}, {{0, 1, F_2s}}, {0, 1});
    return rs;
  }

  bool has_ab_component() const {
    for (const auto& [id, c] : g.components())
      if (c.n_sing[0] > 0 && c.n_sing[1] > 0) return true;
    return false;
  }

  void stage3() {
    auto rules = stage3_rules();
    bool fired = true;
    while (fired) {
      fired = false;
      if (absorb_loop(Side::A) || absorb_loop(Side::B)) {
        fired = true;
        continue;
      }
      for (const auto& r : rules) {
        bool prime_variant =
            std::string(r.name) == "3a'+3b*=3" || std::string(r.name) == "3b'+3a*=3";
        if (prime_variant && !has_ab_component()) continue;
        if (fire_rule(r, 3)) {
          fired = true;
          break;
        }
      }
    }
  }

  // ---------------- stage 4 ----------------

  // circularize one chain; returns false if skipped by a gate
  bool close_chain(std::int64_t id, int stage) {
    const CompInfo c = g.comp(id);  // copy: comp mutates
    if (c.shape != Shape::Chain || c.size <= 0) return false;
    ChainType t = c.ctype();
    if (stage == 4) {
      if (t == ChainType::O3a_prime && wa < Rational(2)) return false;
      if (t == ChainType::O3b_prime && wb < Rational(2)) return false;
    }
    if (opt.cost_gates && rem_route_cost(c) < close_route_cost(c)) {
      any_gate_skip = true;
      return false;
    }
    EndInfo e0 = end_info(c, 0), e1 = end_info(c, 1);
    if (c.size % 2 == 1) {
      // odd: a single merging between the two ends
      EdgeLabel l0 = e0.hanging ? e0.run_side : other(e0.run_side);
      EdgeLabel l1 = e1.hanging ? e1.run_side : other(e1.run_side);
      if (l0 != l1) throw RuleResultMismatch("odd close: label disagreement");
      GraphOp op;
      op.kind = OpKind::OM;
      op.label = l0;
      op.p = e0.hanging ? *g.free_port(e0.run_v, l0) : Port{e0.v, int(l0)};
      op.q = e1.hanging ? *g.free_port(e1.run_v, l1) : Port{e1.v, int(l1)};
      do_op(op, stage, -1, {id});
      drain_conv(stage);
      return true;
    }
    // even chain
    if (!e0.hanging || !e1.hanging) {
      // delete the external edge with a conventional end; re-join the freed
      // run vertex to the opposite end
      EndInfo del = !e0.hanging ? e0 : e1;
      EndInfo opp = !e0.hanging ? e1 : e0;
      if (!e0.hanging && !e1.hanging) {
        // both conventional (type 3): tie-break on the end vertex
        if (tie_less(e1.v, e0.v)) {
          del = e1;
          opp = e0;
        }
      }
      GraphOp op;
      op.kind = OpKind::SM;
      op.e1 = del.e;
      const Edge& de = g.edges[del.e];
      op.kept = de.at[0].v == del.run_v ? 0 : 1;
      if (opp.hanging) {
        op.q = *g.free_port(opp.run_v, del.run_side);
      } else {
        op.q = {opp.v, int(de.label)};
      }
      do_op(op, stage, -1, {id});
      drain_conv(stage);
      return true;
    }
    // both ends hanging (type 2*): remove the second edge from the cheaper
    // side's end; its singular joins the far hanging end
    Side piece = piece_side_for_even_close(c);
    EndInfo from = e0.run_side == piece ? e0 : e1;
    EndInfo to = e0.run_side == piece ? e1 : e0;
    std::int32_t pconv = g.peer(from.e, from.run_v).v;
    std::int32_t e2 = g.other_edge(pconv, from.e);
    if (e2 < 0) throw RuleResultMismatch("even close: chain too short");
    GraphOp op;
    op.kind = OpKind::SM;
    op.e1 = e2;
    const Edge& ee = g.edges[e2];
    std::int32_t s2 = ee.at[0].v == pconv ? ee.at[1].v : ee.at[0].v;
    op.kept = ee.at[0].v == s2 ? 0 : 1;
    op.q = *g.free_port(to.run_v, ee.label);
    do_op(op, stage, -1, {id});
    drain_conv(stage);
    return true;
  }

  bool tie_less(std::int64_t x, std::int64_t y) const {
    if (!opt.shuffle_seed) return x < y;
    return rank(x) < rank(y);
  }

  void stage4() {
    bool fired = true;
    while (fired) {
      fired = false;
      std::vector<std::int64_t> ids;
      for (const auto& [id, c] : g.components())
        if (c.shape == Shape::Chain && c.size > 0) ids.push_back(id);
      std::sort(ids.begin(), ids.end(),
                [&](std::int64_t a, std::int64_t b) { return rank(a) < rank(b); });
      for (std::int64_t id : ids) {
        if (!g.components().count(id)) continue;
        if (close_chain(id, 4)) fired = true;
      }
      if (!fired) break;
    }
  }

  // ---------------- stage 5 ----------------

  bool is_ab_cycle(const CompInfo& c) const {
    return c.shape == Shape::Cycle && c.n_sing[0] > 0 && c.n_sing[1] > 0;
  }

  void stage5(bool include_51) {
    if (include_51) {
      // 5.1: merge pairs of (a,b)-cycles
      while (true) {
        std::vector<std::int64_t> cycs;
        for (const auto& [id, c] : g.components())
          if (is_ab_cycle(c)) cycs.push_back(id);
        if (cycs.size() < 2) break;
        std::sort(cycs.begin(), cycs.end(),
                  [&](std::int64_t a, std::int64_t b) { return rank(a) < rank(b); });
        std::int64_t c1 = cycs[0], c2 = cycs[1];
        if (opt.cost_gates) {
          const CompInfo& i1 = g.comp(c1);
          const CompInfo& i2 = g.comp(c2);
          CompInfo merged;
          merged.shape = Shape::Cycle;
          merged.n_sing[0] = i1.n_sing[0] + i2.n_sing[0] - 1;
          merged.n_sing[1] = i1.n_sing[1] + i2.n_sing[1] - 1;
          merged.size = i1.size + i2.size - 2;
          merged.s_ops = 0;
          Rational after = Rational(2) + close_route_cost(merged);
          Rational before = auto_cost(i1) + auto_cost(i2);
          if (after > before) {
            any_gate_skip = true;
            break;
          }
        }
        merge_ab_cycles(c1, c2);
      }
    }
    // 5.2: shrink every (a,b)-cycle to size 2
    bool fired = true;
    while (fired) {
      fired = false;
      std::vector<std::int64_t> cycs;
      for (const auto& [id, c] : g.components())
        if (is_ab_cycle(c) && c.size > 2) cycs.push_back(id);
      std::sort(cycs.begin(), cycs.end(),
                [&](std::int64_t a, std::int64_t b) { return rank(a) < rank(b); });
      for (std::int64_t id : cycs) {
        if (!g.components().count(id)) continue;
        const CompInfo& c = g.comp(id);
        if (opt.cost_gates && rem_route_cost(c) < close_route_cost(c)) {
          any_gate_skip = true;
          continue;
        }
        shrink_cycle(id);
        fired = true;
      }
    }
  }

  // one 5.1 interaction: two DMs with joining
  void merge_ab_cycles(std::int64_t c1, std::int64_t c2) {
    const CompInfo& i1 = g.comp(c1);
    const CompInfo& i2 = g.comp(c2);
    // join on the b side (arbitrary but fixed)
    std::int32_t b1 = i1.rep_sing[1], b2 = i2.rep_sing[1];
    GraphOp op;
    op.kind = OpKind::DM;
    op.e1 = g.verts[b1].slot[0];
    op.e2 = g.verts[b2].slot[0];
    const Edge& e1 = g.edges[op.e1];
    const Edge& e2 = g.edges[op.e2];
    int b1slot = e1.at[0].v == b1 ? 0 : 1;
    int b2slot = e2.at[0].v == b2 ? 0 : 1;
    // pair b1 with b2 (joining), and the two conventional peers
    op.pattern = (b1slot == b2slot) ? 0 : 1;
    do_op(op, 5, -1, {c1, c2});
    drain_conv(5);  // the conventional edge formed by the second pairing
  }

  // one 5.2 step: joins the next same-side pair, then cut off the formed
  // conventional edge
  void shrink_cycle(std::int64_t id) {
    const CompInfo& c = g.comp(id);
    Side s = c.n_sing[1] >= 2 ? Side::B : Side::A;
    if (c.n_sing[int(s)] < 2)
      throw NotReducible("(a,b)-cycle with no same-side pair");
    std::int32_t v1 = c.rep_sing[int(s)];
    // walk from v1 via slot 1 to the next same-side singular
    std::int32_t via = g.verts[v1].slot[1];
    std::int32_t cur = g.peer(via, v1).v;
    std::int32_t entered = via;
    while (!(g.verts[cur].singular && g.verts[cur].side == s)) {
      std::int32_t ne = g.other_edge(cur, entered);
      entered = ne;
      cur = g.peer(ne, cur).v;
    }
    std::int32_t v2 = cur;
    GraphOp op;
    op.kind = OpKind::DM;
    op.e1 = g.verts[v1].slot[0];  // away edge of v1
    op.e2 = entered;              // the edge entering v2
    const Edge& e1 = g.edges[op.e1];
    const Edge& e2 = g.edges[op.e2];
    int s1 = e1.at[0].v == v1 ? 0 : 1;
    int s2 = e2.at[0].v == v2 ? 0 : 1;
    op.pattern = (s1 == s2) ? 0 : 1;
    do_op(op, 5, -1, {id});
    drain_conv(5);
  }

  // ---------------- stage 6 ----------------

  void stage6() {
    bool fired = true;
    while (fired) {
      fired = false;
      fired = fire_6_1() || fire_6_2();
    }
  }

  std::int64_t find_comp(std::function<bool(const CompInfo&)> pred) const {
    std::int64_t best = -1;
    std::uint64_t best_rank = 0;
    for (const auto& [id, c] : g.components()) {
      if (!pred(c)) continue;
      std::uint64_t rk = rank(id);
      if (best < 0 || rk < best_rank) {
        best = id;
        best_rank = rk;
      }
    }
    return best;
  }

  std::int64_t find_2c() const {
    return find_comp([](const CompInfo& c) { return c.cls().is2c; });
  }
  std::int64_t find_chain_typed(TypeMask m, std::int64_t exclude = -1) const {
    std::int64_t best = -1;
    std::uint64_t best_rank = 0;
    for (const auto& [id, c] : g.components()) {
      if (id == exclude) continue;
      if (c.shape != Shape::Chain && c.shape != Shape::IsoSing) continue;
      if (!(tm(c.ctype()) & m)) continue;
      std::uint64_t rk = rank(id);
      if (best < 0 || rk < best_rank) {
        best = id;
        best_rank = rk;
      }
    }
    return best;
  }

  bool gate_pair(Rational op_cost_, std::initializer_list<std::int64_t> consumed,
                 Rational product_cost) {
    if (!opt.cost_gates) return true;
    Rational before(0);
    for (std::int64_t id : consumed) before += auto_cost(g.comp(id));
    bool pass = op_cost_ + product_cost <= before;
    if (!pass) any_gate_skip = true;
    return pass;
  }

  bool fire_6_1() {
    std::int64_t tc = find_2c();
    if (tc < 0) return false;
    std::int64_t pa = find_chain_typed(F_2ap);
    std::int64_t pb = find_chain_typed(F_2bp);
    if (pa < 0 || pb < 0) return false;
    // product: a 2' chain
    CompInfo prod;
    prod.shape = Shape::Chain;
    prod.n_sing = {1, 1};
    prod.size = 0;
    prod.res = {2, Side::A, true, true};
    if (!gate_pair(Rational(2), {tc, pa, pb}, close_route_cost(prod))) return false;
    // SM1: delete the 2c's a-edge at its A vertex; join the A into 2b'
    const CompInfo& c2c = g.comp(tc);
    std::int32_t av = c2c.rep_sing[0];
    GraphOp op1;
    op1.kind = OpKind::SM;
    op1.e1 = g.verts[av].slot[0];
    op1.kept = g.edges[op1.e1].at[0].v == av ? 0 : 1;
    op1.q = *g.free_port(g.comp(pb).endv[0], Side::A);
    auto prod1 = do_op(op1, 6, 0, {tc, pb});
    // the produced chain (typed 1b)
    std::int64_t chain = -1;
    for (std::int64_t id : prod1)
      if (g.components().count(id) && !g.comp(id).is_final() &&
          g.comp(id).sing_total() > 0)
        chain = id;
    if (chain < 0) throw RuleResultMismatch("6.1: no intermediate chain");
    // SM2: delete the chain's b-edge at its B vertex end... the b-edge on the
    // conventional-end side; join the B into 2a'
    const CompInfo& cc = g.comp(chain);
    std::int32_t bv = cc.rep_sing[1];
    // delete the b-edge of bv that leads toward the conventional end
    EndInfo e0 = end_info(cc, 0), e1 = end_info(cc, 1);
    EndInfo conv_end = e0.hanging ? e1 : e0;
    // walk from the conventional end: its edge is the b-edge at bv
    GraphOp op2;
    op2.kind = OpKind::SM;
    op2.e1 = conv_end.e;
    op2.kept = g.edges[op2.e1].at[0].v == bv ? 0 : 1;
    if (g.peer(op2.e1, conv_end.v).v != bv)
      throw RuleResultMismatch("6.1: unexpected chain layout");
    op2.q = *g.free_port(g.comp(pa).endv[0], Side::B);
    do_op(op2, 6, -2, {chain, pa});
    drain_conv(6);
    return true;
  }

  bool fire_6_2() {
    std::int64_t tc = find_2c();
    if (tc < 0) return false;
    std::int64_t p2 = find_chain_typed(F_2p);
    if (p2 < 0) return false;
    CompInfo prod;
    prod.shape = Shape::Chain;
    prod.n_sing = {1, 1};
    prod.size = 0;
    prod.res = {2, Side::A, true, true};
    if (!gate_pair(Rational(2), {tc, p2}, close_route_cost(prod))) return false;
    const CompInfo& c2c = g.comp(tc);
    const CompInfo& cp = g.comp(p2);
    std::int32_t av = c2c.rep_sing[0];
    // the 2' hanging a-edge
    EndInfo pe0 = end_info(cp, 0), pe1 = end_info(cp, 1);
    EndInfo ahang = pe0.run_side == Side::A ? pe0 : pe1;
    GraphOp op;
    op.kind = OpKind::DM;
    op.e1 = g.verts[av].slot[0];
    op.e2 = ahang.e;
    const Edge& e1 = g.edges[op.e1];
    const Edge& e2 = g.edges[op.e2];
    int s1 = e1.at[0].v == av ? 0 : 1;
    int s2 = e2.at[0].v == ahang.run_v ? 0 : 1;
    op.pattern = (s1 == s2) ? 0 : 1;
    do_op(op, 6, -1, {tc, p2});
    drain_conv(6);
    return true;
  }

  // ---------------- stage 7 ----------------

  std::int64_t find_cycle_single(Side s) const {
    return find_comp([&](const CompInfo& c) {
      return c.shape == Shape::Cycle && !c.is_final() && c.n_sing[int(s)] > 0 &&
             c.n_sing[int(other(s))] == 0;
    });
  }

  long stage7() {
    long t1 = 0;
    bool fired = true;
    while (fired) {
      fired = false;
      if (wa > Rational(2) && stage7_side(Side::A)) {
        ++t1;
        fired = true;
        continue;
      }
      if (wb > Rational(2) && stage7_side(Side::B)) {
        ++t1;
        fired = true;
      }
    }
    return t1;
  }

  // one interaction of the s-side list (s = A means the listed a-rules)
  bool stage7_side(Side s) {
    Side o = other(s);
    TypeMask prime_iso = s == Side::A ? F_2bp : F_2ap;  // isolated s-singular
    TypeMask prime_1 = s == Side::A ? F_e1ap : F_e1bp;  // 1s' chain
    // 1) 2c + s-cycle = 2c + 2-cycle
    std::int64_t tc = find_2c();
    std::int64_t scyc = find_cycle_single(s);
    if (tc >= 0 && scyc >= 0) {
      r7_join_cycles(tc, scyc, s);
      return true;
    }
    // 2) s-cycle + s-cycle
    if (scyc >= 0) {
      std::int64_t scyc2 = -1;
      std::uint64_t bk = 0;
      for (const auto& [id, c] : g.components()) {
        if (id == scyc) continue;
        if (c.shape == Shape::Cycle && !c.is_final() && c.n_sing[int(s)] > 0 &&
            c.n_sing[int(o)] == 0) {
          if (scyc2 < 0 || rank(id) < bk) {
            scyc2 = id;
            bk = rank(id);
          }
        }
      }
      if (scyc2 >= 0) {
        r7_join_cycles(scyc, scyc2, s);
        return true;
      }
    }
    // 3) s-cycle + 2'-chain = 2'-chain + 2-cycle
    if (scyc >= 0) {
      std::int64_t p2 = find_chain_typed(F_2p);
      if (p2 >= 0) {
        r7_absorb_into_chain(scyc, p2, s);
        return true;
      }
    }
    // 4) 2c + (iso s-singular) = 2c
    if (tc >= 0) {
      std::int64_t iso = find_chain_typed(prime_iso);
      if (iso >= 0) {
        r7_2c_absorb_iso(tc, iso, s);
        return true;
      }
    }
    // 5) 2c + 1s' = 2c
    if (tc >= 0) {
      std::int64_t p1 = find_chain_typed(prime_1);
      if (p1 >= 0) {
        r7_2c_absorb_prime1(tc, p1, s);
        return true;
      }
    }
    // 6) s-cycle + (iso s-singular) = iso + 2-cycle
    if (scyc >= 0) {
      std::int64_t iso = find_chain_typed(prime_iso);
      if (iso >= 0) {
        r7_absorb_into_chain(scyc, iso, s);
        return true;
      }
    }
    // 7) s-cycle + 1s' = 1s' + 2-cycle
    if (scyc >= 0) {
      std::int64_t p1 = find_chain_typed(prime_1);
      if (p1 >= 0) {
        r7_absorb_into_chain(scyc, p1, s);
        return true;
      }
    }
    return false;
  }

  // rules 1 & 2: DM joining the two cycles' s-vertices, then cut-off
  void r7_join_cycles(std::int64_t c1, std::int64_t c2, Side s) {
    const CompInfo& i1 = g.comp(c1);
    const CompInfo& i2 = g.comp(c2);
    std::int32_t v1 = i1.rep_sing[int(s)], v2 = i2.rep_sing[int(s)];
    GraphOp op;
    op.kind = OpKind::DM;
    op.e1 = g.verts[v1].slot[0];
    op.e2 = g.verts[v2].slot[0];
    const Edge& e1 = g.edges[op.e1];
    const Edge& e2 = g.edges[op.e2];
    int s1 = e1.at[0].v == v1 ? 0 : 1;
    int s2 = e2.at[0].v == v2 ? 0 : 1;
    op.pattern = (s1 == s2) ? 0 : 1;
    do_op(op, 7, 0, {c1, c2});
    drain_conv(7);
  }

  // rules 3, 6, 7: SM absorbing the s-cycle's vertex into a chain's
  // s-singular, then cut-off of the freed conventional edge
  void r7_absorb_into_chain(std::int64_t cyc, std::int64_t chain, Side s) {
    const CompInfo& ic = g.comp(cyc);
    const CompInfo& ch = g.comp(chain);
    std::int32_t cv = ic.rep_sing[int(s)];
    std::int32_t tv = ch.rep_sing[int(s)];
    GraphOp op;
    op.kind = OpKind::SM;
    op.e1 = g.verts[cv].slot[0];
    op.kept = g.edges[op.e1].at[0].v == cv ? 0 : 1;
    auto fp = g.free_port(tv, s);
    if (!fp) throw RuleResultMismatch("stage 7: chain target has no free slot");
    op.q = *fp;
    do_op(op, 7, 0, {cyc, chain});
    drain_conv(7);
  }

  // rule 4: 2c + iso = 2c (SM join, then OM re-closing)
  void r7_2c_absorb_iso(std::int64_t tc, std::int64_t iso, Side s) {
    const CompInfo& c2c = g.comp(tc);
    std::int32_t sv = c2c.rep_sing[int(s)];
    std::int32_t tv = g.comp(iso).endv[0];
    GraphOp op1;
    op1.kind = OpKind::SM;
    op1.e1 = g.verts[sv].slot[0];
    op1.kept = g.edges[op1.e1].at[0].v == sv ? 0 : 1;
    op1.q = {tv, 0};
    auto prod = do_op(op1, 7, 0, {tc, iso});
    // re-close the resulting odd chain
    std::int64_t chain = -1;
    for (std::int64_t id : prod)
      if (g.components().count(id) && !g.comp(id).is_final() && g.comp(id).sing_total() > 0)
        chain = id;
    if (chain < 0) throw RuleResultMismatch("7.4: no chain produced");
    if (!close_chain(chain, 7)) throw RuleResultMismatch("7.4: reclose failed");
  }

  // rule 5: 2c + 1s' = 2c (SM join, then SM re-closing the even chain)
  void r7_2c_absorb_prime1(std::int64_t tc, std::int64_t p1, Side s) {
    const CompInfo& c2c = g.comp(tc);
    std::int32_t sv = c2c.rep_sing[int(s)];
    const CompInfo& pc = g.comp(p1);
    EndInfo pe0 = end_info(pc, 0), pe1 = end_info(pc, 1);
    EndInfo hang = pe0.hanging ? pe0 : pe1;
    GraphOp op1;
    op1.kind = OpKind::SM;
    op1.e1 = g.verts[sv].slot[0];
    op1.kept = g.edges[op1.e1].at[0].v == sv ? 0 : 1;
    op1.q = *g.free_port(hang.run_v, s);
    auto prod = do_op(op1, 7, 0, {tc, p1});
    std::int64_t chain = -1;
    for (std::int64_t id : prod)
      if (g.components().count(id) && !g.comp(id).is_final() && g.comp(id).sing_total() > 0)
        chain = id;
    if (chain < 0) throw RuleResultMismatch("7.5: no chain produced");
    if (!close_chain(chain, 7)) throw RuleResultMismatch("7.5: reclose failed");
  }

  // ---------------- stage 8 ----------------

  void stage8() {
    bool fired = true;
    while (fired) {
      fired = false;
      std::vector<std::int64_t> ids;
      for (const auto& [id, c] : g.components())
        if (!c.is_final()) ids.push_back(id);
      std::sort(ids.begin(), ids.end(),
                [&](std::int64_t a, std::int64_t b) { return rank(a) < rank(b); });
      for (std::int64_t id : ids) {
        if (!g.components().count(id)) continue;
        const CompInfo c = g.comp(id);
        if (c.is_final()) continue;
        fired = true;
        if (c.shape == Shape::Chain &&
            (c.ctype() == ChainType::O3a_prime || c.ctype() == ChainType::O3b_prime) &&
            c.size == 1) {
          // circularize, then the removal happens on the next sweep
          ReductionOptions saved = opt;
          opt.cost_gates = false;  // stage 8 must finish regardless
          close_chain(id, 8);
          opt = saved;
          continue;
        }
        if ((c.shape == Shape::Chain && c.size > 0) ||
            (c.shape == Shape::Cycle && c.size > 2)) {
          rem_all(id);
          continue;
        }
        // loops, isolated singulars, small chains, size-2 cycles: remove
        // singular vertices directly
        if (c.sing_total() == 0) {
          // a conventional leftover (skeleton): cut it off
          std::int32_t seed = g.comp_root_vertex(id);
          auto w = g.walk_component(seed);
          for (std::int32_t e : w.es)
            if (g.edges[e].alive && g.edge_is_conventional(e)) conv_queue.push_back(e);
          drain_conv(8);
          continue;
        }
        std::int32_t v = c.rep_sing[0] >= 0 ? c.rep_sing[0] : c.rep_sing[1];
        GraphOp op;
        op.kind = OpKind::Rem;
        op.vertex = v;
        do_op(op, 8, std::nullopt, {id});
      }
    }
    for (const auto& [id, c] : g.components())
      if (!c.is_final()) throw NotReducible("non-final component survived stage 8");
  }

  // removal route for a component whose interactions were skipped: remove
  // every singular vertex, then cut off the conventional skeleton
  void rem_all(std::int64_t id) {
    std::int32_t seed = g.comp_root_vertex(id);
    auto w = g.walk_component(seed);
    std::vector<std::int32_t> sings;
    for (std::int32_t v : w.vs)
      if (g.verts[v].singular) sings.push_back(v);
    std::sort(sings.begin(), sings.end());
    std::int64_t cur = id;
    for (std::int32_t v : sings) {
      GraphOp op;
      op.kind = OpKind::Rem;
      op.vertex = v;
      auto prod = do_op(op, 8, std::nullopt, {cur});
      cur = prod.empty() ? cur : prod.back();
    }
    // cut off the conventional skeleton
    for (std::size_t e = 0; e < g.edges.size(); ++e)
      if (g.edges[e].alive && g.edge_is_conventional(std::int32_t(e)))
        conv_queue.push_back(std::int32_t(e));
    drain_conv(8);
  }

  // ---------------- driver ----------------

  void run() {
    unsigned m = opt.stage_mask;
    if (m & 0x01) stage1();
    if (m & 0x02) stage2();
    if (m & 0x04) stage3();
    if (m & 0x08) stage4();
    if (m & 0x10) stage5(true);
    else if (m & 0x80) stage5(false);  // autonomous: 5.2 only
    if (m & 0x20) stage6();
    if (m & 0x40) out.t1 = stage7();
    if (m & 0x80) stage8();
  }
};

}  // namespace

ReductionResult reduce_graph(BreakpointGraph& g, const CostModel& cm,
                             const ReductionOptions& opt) {
  cm.validate();
  Reducer r(g, cm, opt);
  r.run();
  return std::move(r.out);
}

ReductionResult run_algorithm(const GenomeStructure& a, const GenomeStructure& b,
                              const CostModel& cm, const ReductionOptions& opt) {
  BreakpointGraph g = BreakpointGraph::build(a, b);
  return reduce_graph(g, cm, opt);
}

ReductionResult autonomous_reduce(BreakpointGraph& g, const CostModel& cm) {
  ReductionOptions opt;
  opt.stage_mask = kStagesAutonomous;
  opt.cost_gates = false;
  return reduce_graph(g, cm, opt);
}

int compute_t(const BreakpointGraph& g) {
  BreakpointGraph copy = g;
  ReductionOptions opt;
  opt.stage_mask = kStagesT;
  opt.cost_gates = false;
  CostModel unit;
  auto res = reduce_graph(copy, unit, opt);
  return int(res.op_count);
}

}  // namespace chaincycle
