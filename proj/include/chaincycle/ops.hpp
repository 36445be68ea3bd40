#pragma once

#include <optional>

#include "chaincycle/graph.hpp"
#include "chaincycle/rational.hpp"

namespace chaincycle {

struct CostModel {
  Rational w = 1;      // every standard (DCJ) operation
  Rational w_del = 1;  // removal of an a-vertex (deletion)
  Rational w_ins = 1;  // removal of a b-vertex (insertion)

  enum class Regime { Exact, Bounded, Unsupported };

  // normalized costs (divided by w)
  Rational wa() const { return w_del / w; }
  Rational wb() const { return w_ins / w; }
  Rational eps_a() const { return wa() - Rational(1); }
  Rational eps_b() const { return wb() - Rational(1); }
  Rational side_cost(Side s) const { return s == Side::A ? wa() : wb(); }

  Regime regime() const {
    Rational lo = w_del < w_ins ? w_del : w_ins;
    Rational hi = w_del < w_ins ? w_ins : w_del;
    if (hi <= w) return Regime::Exact;
    if (lo >= w) return Regime::Bounded;
    return Regime::Unsupported;
  }
  static const char* regime_name(Regime r) {
    switch (r) {
      case Regime::Exact: return "exact";
      case Regime::Bounded: return "bounded";
      default: return "unsupported";
    }
  }

  void validate() const {
    if (!(w > Rational(0)) || !(w_del > Rational(0)) || !(w_ins > Rational(0)))
      throw std::invalid_argument("costs must be positive");
  }
};

enum class OpKind : std::uint8_t { DM, SM, OM, Cut, Rem };
const char* op_kind_name(OpKind k);

// One of the five breakpoint-graph operations with concrete operands.
struct GraphOp {
  OpKind kind = OpKind::Cut;
  std::int32_t e1 = -1, e2 = -1;  // DM: both; SM/Cut: e1
  int pattern = 0;                // DM reconnection: 0 = (p0,q0)+(p1,q1), 1 = (p0,q1)+(p1,q0)
  int kept = 0;                   // SM: which endpoint of e1 is re-joined
  EdgeLabel label = Side::A;      // OM
  Port p, q;                      // OM endpoints; SM: q = target
  std::int32_t vertex = -1;       // Rem
};

enum class RemShape : std::uint8_t { Deg2, Deg1, Deg0Linear, Loop };

// A trace entry. Besides the raw operand ids it carries the operation
// resolved to structure-level extremities, which is what the script module
// consumes.
struct TraceRecord {
  int step = 0;
  int stage = 0;  // 1..8; 0 = autonomous/unspecified
  OpKind kind = OpKind::Cut;
  std::optional<Side> side;  // the structure the operation acts on
  Rational cost;             // normalized units
  std::vector<std::int64_t> args;

  std::vector<Adjacency> cut;   // adjacencies removed (in that structure)
  std::vector<Adjacency> made;  // adjacencies formed
  // Rem payload
  std::vector<SignedGene> segment;
  RemShape rem_shape = RemShape::Deg2;
  bool rem_front = true;  // Deg1: the surviving flank touches the segment front

  int t_before = -1, t_after = -1;  // debug mode only
};

std::string format_trace_record(const TraceRecord& r, bool debug_t);

Rational op_cost(const GraphOp& op, const CostModel& cm, const BreakpointGraph& g);
Side op_side(const GraphOp& op, const BreakpointGraph& g);

struct ApplyReport {
  std::vector<std::int32_t> seeds;  // vertices whose components changed
  int joins = 0;                    // singular-vertex merges performed
  std::vector<std::int32_t> new_edges;
  std::vector<std::int64_t> new_comps;  // filled when the index is refreshed
};

// Applies an operation, maintaining slots and (optionally) the component
// index. Validates preconditions; throws GraphError on violation. If `rec`
// is given it is filled with the resolved structure-level payload.
ApplyReport apply_op(BreakpointGraph& g, const GraphOp& op, TraceRecord* rec = nullptr,
                     bool refresh_index = true);

// The complete set of legal operations on g (oracle branching).
std::vector<GraphOp> enumerate_ops(const BreakpointGraph& g);

// Eligible targets for an OM/SM attachment of the given label: conventional
// vertices with the label slot free, and same-side singular vertices of
// degree <= 1.
std::vector<Port> eligible_ports(const BreakpointGraph& g, EdgeLabel l);

}  // namespace chaincycle
