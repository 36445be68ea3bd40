#include "chaincycle/oracle.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <queue>
#include <sstream>

namespace chaincycle {

namespace {

// symbol per element along a walk: edges 'a'/'b', singular vertices 'A'/'B';
// conventional vertices are implied between consecutive symbols
char edge_sym(const BreakpointGraph& g, std::int32_t e) {
  return g.edges[e].label == Side::A ? 'a' : 'b';
}
char vert_sym(const BreakpointGraph& g, std::int32_t v) {
  return g.verts[v].side == Side::A ? 'A' : 'B';
}

std::string encode_chain(const BreakpointGraph& g, const BreakpointGraph::Walk& w) {
  std::string fwd;
  for (std::size_t i = 0; i < w.vs.size(); ++i) {
    if (g.verts[w.vs[i]].singular) fwd += vert_sym(g, w.vs[i]);
    if (i < w.es.size()) fwd += edge_sym(g, w.es[i]);
  }
  std::string rev(fwd.rbegin(), fwd.rend());
  return std::min(fwd, rev);
}

std::string encode_cycle(const BreakpointGraph& g, const BreakpointGraph::Walk& w) {
  // token ring: for each position, vertex symbol (if singular) then edge
  std::string ring;
  for (std::size_t i = 0; i < w.vs.size(); ++i) {
    if (g.verts[w.vs[i]].singular) ring += vert_sym(g, w.vs[i]);
    ring += edge_sym(g, w.es[i]);
  }
  // minimal rotation over both directions
  std::string best;
  for (int dir = 0; dir < 2; ++dir) {
    std::string s = ring;
    if (dir) std::reverse(s.begin(), s.end());
    for (std::size_t r = 0; r < s.size(); ++r) {
      std::string rot = s.substr(r) + s.substr(0, r);
      if (best.empty() || rot < best) best = rot;
    }
  }
  return "(" + best + ")";
}

}  // namespace

std::string canonicalize(const BreakpointGraph& g) {
  std::vector<std::string> parts;
  for (const auto& [id, c] : g.components()) {
    switch (c.shape) {
      case Shape::IsoConv: parts.push_back("v"); break;
      case Shape::IsoSing:
        parts.push_back(std::string("S") + (c.n_sing[0] ? "A" : "B"));
        break;
      case Shape::Loop:
        parts.push_back(std::string("L") + (c.n_sing[0] ? "A" : "B"));
        break;
      default: {
        auto w = g.walk_component(g.comp_root_vertex(id));
        parts.push_back(c.shape == Shape::Cycle ? encode_cycle(g, w) : encode_chain(g, w));
      }
    }
  }
  std::sort(parts.begin(), parts.end());
  std::string out;
  for (const auto& p : parts) {
    out += p;
    out += '|';
  }
  return out;
}

OracleResult exact_min_cost(const BreakpointGraph& g0, const CostModel& cm,
                            const OracleLimits& limits) {
  cm.validate();
  struct Entry {
    BreakpointGraph g;
    std::vector<TraceRecord> path;
  };
  // priority queue keyed by (cost, ops, seq)
  struct QItem {
    Rational cost;
    long ops;
    std::uint64_t seq;
    std::shared_ptr<Entry> entry;
  };
  auto cmp = [](const QItem& x, const QItem& y) {
    if (x.cost != y.cost) return y.cost < x.cost;
    if (x.ops != y.ops) return y.ops < x.ops;
    return y.seq < x.seq;
  };
  std::priority_queue<QItem, std::vector<QItem>, decltype(cmp)> open(cmp);
  std::map<std::string, std::pair<Rational, long>> best;

  std::uint64_t seq = 0;
  auto push = [&](BreakpointGraph&& g, Rational cost, std::vector<TraceRecord> path) {
    std::string key = canonicalize(g);
    auto it = best.find(key);
    long ops = long(path.size());
    if (it != best.end()) {
      auto [bc, bo] = it->second;
      if (bc < cost || (bc == cost && bo <= ops)) return;
      it->second = {cost, ops};
    } else {
      best.emplace(key, std::make_pair(cost, ops));
    }
    auto e = std::make_shared<Entry>(Entry{std::move(g), std::move(path)});
    open.push({cost, ops, seq++, std::move(e)});
  };

  {
    BreakpointGraph g = g0;
    push(std::move(g), Rational(0), {});
  }
  std::size_t explored = 0;
  while (!open.empty()) {
    QItem it = open.top();
    open.pop();
    const BreakpointGraph& g = it.entry->g;
    {
      // skip stale entries
      std::string key = canonicalize(g);
      auto b = best.find(key);
      if (b != best.end() &&
          (b->second.first < it.cost ||
           (b->second.first == it.cost && b->second.second < it.ops)))
        continue;
    }
    if (g.in_final_form()) {
      OracleResult r;
      r.min_cost = it.cost;
      r.states_explored = explored;
      r.witness = it.entry->path;
      return r;
    }
    if (++explored > limits.max_states) throw LimitExceeded(explored);
    for (const GraphOp& op : enumerate_ops(g)) {
      Rational c = it.cost + op_cost(op, cm, g);
      if (limits.max_cost && c > *limits.max_cost) continue;
      BreakpointGraph ng = g;
      TraceRecord rec;
      rec.step = int(it.entry->path.size());
      rec.cost = op_cost(op, cm, g);
      try {
        apply_op(ng, op, &rec, true);
      } catch (const GraphError&) {
        continue;  // precondition violated for this variant
      }
      auto path = it.entry->path;
      path.push_back(std::move(rec));
      push(std::move(ng), c, std::move(path));
    }
  }
  throw LimitExceeded(explored);
}

}  // namespace chaincycle
