#include "chaincycle/ops.hpp"

#include <algorithm>
#include <sstream>

namespace chaincycle {

const char* op_kind_name(OpKind k) {
  switch (k) {
    case OpKind::DM: return "DM";
    case OpKind::SM: return "SM";
    case OpKind::OM: return "OM";
    case OpKind::Cut: return "Cut";
    case OpKind::Rem: return "Rem";
  }
  return "?";
}

Side op_side(const GraphOp& op, const BreakpointGraph& g) {
  switch (op.kind) {
    case OpKind::DM:
    case OpKind::SM:
    case OpKind::Cut:
      return g.edges[op.e1].label;
    case OpKind::OM:
      return op.label;
    case OpKind::Rem:
      return g.verts[op.vertex].side;
  }
  return Side::A;
}

Rational op_cost(const GraphOp& op, const CostModel& cm, const BreakpointGraph& g) {
  if (op.kind == OpKind::Rem) return cm.side_cost(g.verts[op.vertex].side);
  return Rational(1);
}

namespace {

struct JoinMap {
  // port remapping produced by a contraction
  std::array<Port, 2> from, to;
  int n = 0;
  Port remap(Port p) const {
    for (int i = 0; i < n; ++i)
      if (from[i] == p) return to[i];
    return p;
  }
};

// Adds an edge; if it lands between two distinct same-side singular
// vertices, contracts it (joining). Returns the remap for pending ports.
JoinMap add_with_join(BreakpointGraph& g, EdgeLabel l, Port p, Port q, ApplyReport& rep) {
  JoinMap jm;
  std::int32_t eid = g.new_edge(l, p, q);
  rep.seeds.push_back(p.v);
  rep.seeds.push_back(q.v);
  const Edge& e = g.edges[eid];
  Port pa = e.at[0], pb = e.at[1];
  if (pa.v != pb.v && g.verts[pa.v].singular && g.verts[pb.v].singular) {
    int sx = pa.slot, sy = pb.slot;
    std::int32_t xv = pa.v, yv = pb.v;
    g.contract_join(eid);
    ++rep.joins;
    jm.from[0] = {xv, 1 - sx};
    jm.to[0] = {xv, 0};
    jm.from[1] = {yv, 1 - sy};
    jm.to[1] = {xv, 1};
    jm.n = 2;
  } else {
    rep.new_edges.push_back(eid);
  }
  return jm;
}

Adjacency edge_adjacency(const BreakpointGraph& g, std::int32_t e) {
  return {g.port_extremity(g.edges[e].at[0]), g.port_extremity(g.edges[e].at[1])};
}

}  // namespace

ApplyReport apply_op(BreakpointGraph& g, const GraphOp& op, TraceRecord* rec, bool refresh_index) {
  ApplyReport rep;
  if (rec) {
    rec->kind = op.kind;
    rec->side = op_side(op, g);
    rec->cut.clear();
    rec->made.clear();
    rec->segment.clear();
    rec->args.clear();
  }
  switch (op.kind) {
    case OpKind::Cut: {
      const Edge& e = g.edges[op.e1];
      if (!e.alive) throw GraphError("Cut: dead edge");
      if (rec) {
        rec->cut.push_back(edge_adjacency(g, op.e1));
        rec->args = {op.e1};
      }
      rep.seeds.push_back(e.at[0].v);
      rep.seeds.push_back(e.at[1].v);
      g.detach_edge(op.e1);
      break;
    }
    case OpKind::Rem: {
      Vertex& v = g.verts[op.vertex];
      if (!v.alive || !v.singular) throw GraphError("Rem: operand not a singular vertex");
      if (rec) {
        rec->segment = v.content;
        rec->args = {op.vertex};
      }
      rep.seeds.push_back(op.vertex);
      if (v.has_loop()) {
        if (rec) rec->rem_shape = RemShape::Loop;
        g.detach_edge(v.slot[0]);
        g.kill_vertex(op.vertex);
      } else if (v.degree() == 2) {
        std::int32_t f0 = v.slot[0], f1 = v.slot[1];
        Port p0 = g.peer(f0, op.vertex), p1 = g.peer(f1, op.vertex);
        if (rec) {
          rec->rem_shape = RemShape::Deg2;
          rec->made.push_back({g.port_extremity(p0), g.port_extremity(p1)});
        }
        Side l = v.side;
        g.detach_edge(f0);
        g.detach_edge(f1);
        g.kill_vertex(op.vertex);
        g.new_edge(l, p0, p1);
        rep.seeds.push_back(p0.v);
        rep.seeds.push_back(p1.v);
      } else if (v.degree() == 1) {
        std::int32_t f = v.slot[0] >= 0 ? v.slot[0] : v.slot[1];
        Port p = g.peer(f, op.vertex);
        if (rec) {
          rec->rem_shape = RemShape::Deg1;
          rec->rem_front = (f == v.slot[0]);
          rec->made.push_back({g.port_extremity(p), g.port_extremity(p)});
        }
        g.detach_edge(f);
        g.kill_vertex(op.vertex);
        rep.seeds.push_back(p.v);
      } else {
        if (rec) rec->rem_shape = RemShape::Deg0Linear;
        g.kill_vertex(op.vertex);
      }
      break;
    }
    case OpKind::OM: {
      if (rec) {
        rec->made.push_back({g.port_extremity(op.p), g.port_extremity(op.q)});
        rec->args = {op.p.v, op.p.slot, op.q.v, op.q.slot};
      }
      add_with_join(g, op.label, op.p, op.q, rep);
      break;
    }
    case OpKind::SM: {
      const Edge& e = g.edges[op.e1];
      if (!e.alive) throw GraphError("SM: dead edge");
      EdgeLabel l = e.label;
      Port keptp = e.at[op.kept];
      if (rec) {
        rec->cut.push_back(edge_adjacency(g, op.e1));
        rec->made.push_back({g.port_extremity(keptp), g.port_extremity(op.q)});
        rec->args = {op.e1, op.kept, op.q.v, op.q.slot};
      }
      rep.seeds.push_back(e.at[0].v);
      rep.seeds.push_back(e.at[1].v);
      g.detach_edge(op.e1);
      add_with_join(g, l, keptp, op.q, rep);
      break;
    }
    case OpKind::DM: {
      Edge& e1 = g.edges[op.e1];
      Edge& e2 = g.edges[op.e2];
      if (!e1.alive || !e2.alive) throw GraphError("DM: dead edge");
      if (op.e1 == op.e2) throw GraphError("DM: same edge twice");
      if (e1.label != e2.label) throw GraphError("DM: label mismatch");
      EdgeLabel l = e1.label;
      Port a = e1.at[0], b = e1.at[1], c = e2.at[0], d = e2.at[1];
      Port n1a = a, n1b = (op.pattern == 0 ? c : d);
      Port n2a = b, n2b = (op.pattern == 0 ? d : c);
      if (rec) {
        rec->cut.push_back(edge_adjacency(g, op.e1));
        rec->cut.push_back(edge_adjacency(g, op.e2));
        rec->made.push_back({g.port_extremity(n1a), g.port_extremity(n1b)});
        rec->made.push_back({g.port_extremity(n2a), g.port_extremity(n2b)});
        rec->args = {op.e1, op.e2, op.pattern};
      }
      for (Port pp : {a, b, c, d}) rep.seeds.push_back(pp.v);
      g.detach_edge(op.e1);
      g.detach_edge(op.e2);
      JoinMap jm = add_with_join(g, l, n1a, n1b, rep);
      n2a = jm.remap(n2a);
      n2b = jm.remap(n2b);
      add_with_join(g, l, n2a, n2b, rep);
      break;
    }
  }
  if (refresh_index) rep.new_comps = g.refresh(rep.seeds);
  return rep;
}

std::vector<Port> eligible_ports(const BreakpointGraph& g, EdgeLabel l) {
  std::vector<Port> out;
  for (std::size_t v = 0; v < g.verts.size(); ++v) {
    const Vertex& vv = g.verts[v];
    if (!vv.alive) continue;
    if (!vv.singular) {
      if (vv.slot[int(l)] < 0) out.push_back({std::int32_t(v), int(l)});
    } else if (vv.side == l) {
      if (vv.slot[0] < 0)
        out.push_back({std::int32_t(v), 0});
      else if (vv.slot[1] < 0)
        out.push_back({std::int32_t(v), 1});
    }
  }
  return out;
}

std::vector<GraphOp> enumerate_ops(const BreakpointGraph& g) {
  std::vector<GraphOp> ops;
  std::vector<std::int32_t> alive_edges;
  for (std::size_t e = 0; e < g.edges.size(); ++e)
    if (g.edges[e].alive) alive_edges.push_back(std::int32_t(e));

  for (std::int32_t e : alive_edges) {
    GraphOp c;
    c.kind = OpKind::Cut;
    c.e1 = e;
    ops.push_back(c);
  }
  for (std::size_t v = 0; v < g.verts.size(); ++v) {
    if (!g.verts[v].alive || !g.verts[v].singular) continue;
    GraphOp r;
    r.kind = OpKind::Rem;
    r.vertex = std::int32_t(v);
    ops.push_back(r);
  }
  for (EdgeLabel l : {Side::A, Side::B}) {
    auto ports = eligible_ports(g, l);
    for (std::size_t i = 0; i < ports.size(); ++i) {
      for (std::size_t j = i + 1; j < ports.size(); ++j) {
        GraphOp o;
        o.kind = OpKind::OM;
        o.label = l;
        o.p = ports[i];
        o.q = ports[j];
        ops.push_back(o);
      }
      // self loop closure for a degree-0 singular
      const Vertex& vv = g.verts[ports[i].v];
      if (vv.singular && vv.degree() == 0) {
        GraphOp o;
        o.kind = OpKind::OM;
        o.label = l;
        o.p = {ports[i].v, 0};
        o.q = {ports[i].v, 1};
        ops.push_back(o);
      }
    }
  }
  // SM: edge x kept end x target eligible after deletion
  for (std::int32_t e : alive_edges) {
    const Edge& ee = g.edges[e];
    EdgeLabel l = ee.label;
    for (int kept = 0; kept < 2; ++kept) {
      Port kp = ee.at[kept];
      Port op_ = ee.at[1 - kept];
      // candidate targets: eligible now, plus the endpoints freed by deletion
      std::vector<Port> targets = eligible_ports(g, l);
      // the other endpoint becomes free after deletion
      const Vertex& ov = g.verts[op_.v];
      if (!ov.singular || ov.side == l) {
        bool already = false;
        for (const Port& t : targets)
          if (t.v == op_.v) already = true;
        if (!already && !ee.is_loop()) targets.push_back(op_);
      }
      for (const Port& t : targets) {
        if (t.v == op_.v && t.slot == op_.slot) continue;  // exact recreation
        if (t.v == kp.v) {
          // self-target: only sensible for a singular with its second slot
          // free (forms a loop); conventional vertices cannot self-pair
          if (!g.verts[kp.v].singular) continue;
          if (t.slot == kp.slot) continue;
        }
        GraphOp o;
        o.kind = OpKind::SM;
        o.e1 = e;
        o.kept = kept;
        o.q = t;
        ops.push_back(o);
      }
    }
  }
  // DM: same-label pairs x 2 patterns
  for (std::size_t i = 0; i < alive_edges.size(); ++i)
    for (std::size_t j = i + 1; j < alive_edges.size(); ++j) {
      if (g.edges[alive_edges[i]].label != g.edges[alive_edges[j]].label) continue;
      for (int pat = 0; pat < 2; ++pat) {
        GraphOp o;
        o.kind = OpKind::DM;
        o.e1 = alive_edges[i];
        o.e2 = alive_edges[j];
        o.pattern = pat;
        ops.push_back(o);
      }
    }
  return ops;
}

std::string format_trace_record(const TraceRecord& r, bool debug_t) {
  std::ostringstream os;
  os << "step=" << r.step << " stage=";
  if (r.stage == 0)
    os << "auto";
  else
    os << r.stage;
  os << " op=" << op_kind_name(r.kind) << " side=";
  os << (r.side ? side_name(*r.side) : "-");
  os << " args=";
  for (std::size_t i = 0; i < r.args.size(); ++i) {
    if (i) os << ',';
    os << r.args[i];
  }
  Rational c = r.cost;
  os << " cost=" << c.num() << "/" << c.den();
  if (debug_t && r.t_before >= 0) os << " t_before=" << r.t_before << " t_after=" << r.t_after;
  return os.str();
}

}  // namespace chaincycle
