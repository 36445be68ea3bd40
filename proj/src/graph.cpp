#include "chaincycle/graph.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace chaincycle {

const char* chain_type_name(ChainType t) {
  switch (t) {
    case ChainType::O1a: return "1a";
    case ChainType::O1b: return "1b";
    case ChainType::O2a_star: return "2a*";
    case ChainType::O2a_prime: return "2a'";
    case ChainType::O2b_star: return "2b*";
    case ChainType::O2b_prime: return "2b'";
    case ChainType::O3a_star: return "3a*";
    case ChainType::O3a_prime: return "3a'";
    case ChainType::O3b_star: return "3b*";
    case ChainType::O3b_prime: return "3b'";
    case ChainType::E1a_star: return "1_a*";
    case ChainType::E1a_prime: return "1_a'";
    case ChainType::E1b_star: return "1_b*";
    case ChainType::E1b_prime: return "1_b'";
    case ChainType::E2_star: return "2*";
    case ChainType::E2_prime: return "2'";
    case ChainType::E3: return "3";
    case ChainType::E0: return "0";
  }
  return "?";
}

ChainType classify_residual(const ResidualSummary& r) {
  if (r.runs == 0) return ChainType::E0;
  int h = (r.hang0 ? 1 : 0) + (r.hang1 ? 1 : 0);
  int sz = r.runs - h;
  if (sz == -1)  // single run hanging from both sides: isolated singular
    return r.first_side == Side::B ? ChainType::O2a_prime : ChainType::O2b_prime;
  bool odd = (sz % 2 != 0);
  if (odd) {
    if (h == 2) {
      // both hanging ends; run parity makes the end sides equal
      return r.first_side == Side::B ? ChainType::O2a_star : ChainType::O2b_star;
    }
    if (h == 1) {
      Side hang_side = r.hang0 ? r.first_side : r.last_side();
      return hang_side == Side::B ? ChainType::O1a : ChainType::O1b;
    }
    if (r.first_side == Side::A)
      return sz == 1 ? ChainType::O3a_prime : ChainType::O3a_star;
    return sz == 1 ? ChainType::O3b_prime : ChainType::O3b_star;
  }
  if (h == 2) return sz == 0 ? ChainType::E2_prime : ChainType::E2_star;
  if (h == 1) {
    Side hang_side = r.hang0 ? r.first_side : r.last_side();
    if (hang_side == Side::A)
      return sz == 0 ? ChainType::E1a_prime : ChainType::E1a_star;
    return sz == 0 ? ChainType::E1b_prime : ChainType::E1b_star;
  }
  return ChainType::E3;
}

ChainType CompInfo::ctype() const {
  if (shape == Shape::Chain || shape == Shape::IsoSing) return classify_residual(res);
  return ChainType::E0;
}

ComponentClass CompInfo::cls() const {
  ComponentClass c;
  bool a = n_sing[0] > 0, b = n_sing[1] > 0;
  c.content = a && b   ? ContentClass::AB
              : a      ? ContentClass::AOnly
              : b      ? ContentClass::BOnly
                       : ContentClass::Zero;
  c.shape = shape;
  c.is2c = shape == Shape::Cycle && size == 2 && n_sing[0] == 1 && n_sing[1] == 1;
  return c;
}

bool CompInfo::d_flag() const {
  if (shape != Shape::Chain && shape != Shape::IsoSing) return false;
  switch (ctype()) {
    case ChainType::O1a:
    case ChainType::O1b:
    case ChainType::O3a_star:
    case ChainType::O3a_prime:
    case ChainType::O3b_star:
    case ChainType::O3b_prime:
    case ChainType::E3:
      return true;
    default:
      return false;
  }
}

bool CompInfo::is_final() const {
  if (shape == Shape::IsoConv) return true;
  return shape == Shape::Cycle && size == 2 && sing_total() == 0;
}

// --- build ---------------------------------------------------------------

BreakpointGraph BreakpointGraph::build(const GenomeStructure& a, const GenomeStructure& b) {
  validate_structure(a);
  validate_structure(b);
  BreakpointGraph g;

  auto ids_a = a.gene_ids();
  auto ids_b = b.gene_ids();
  std::vector<GeneId> common;
  std::set_intersection(ids_a.begin(), ids_a.end(), ids_b.begin(), ids_b.end(),
                        std::back_inserter(common));
  std::set<GeneId> common_set(common.begin(), common.end());

  // conventional vertices: tail and head per common gene, in sorted order
  std::map<Extremity, std::int32_t> conv;
  for (GeneId id : common) {
    for (GeneEnd e : {GeneEnd::Tail, GeneEnd::Head}) {
      Vertex v;
      v.alive = true;
      v.singular = false;
      v.ext = {id, e};
      conv[v.ext] = std::int32_t(g.verts.size());
      g.verts.push_back(std::move(v));
    }
  }

  auto add_side = [&](const GenomeStructure& s, Side side) {
    for (const auto& chrom : s.chromosomes) {
      // split the chromosome into elements: common genes and special runs
      struct Elem {
        bool block;
        SignedGene gene;                 // if common
        std::vector<SignedGene> run;     // if block
      };
      std::vector<Elem> elems;
      for (const auto& gene : chrom.genes) {
        if (common_set.count(gene.id)) {
          elems.push_back({false, gene, {}});
        } else {
          if (!elems.empty() && elems.back().block)
            elems.back().run.push_back(gene);
          else
            elems.push_back({true, {}, {gene}});
        }
      }
      bool circular = chrom.topology == Topology::Circular;
      // a circular chromosome may wrap a special run across the seam
      if (circular && elems.size() > 1 && elems.front().block && elems.back().block) {
        auto& first = elems.front();
        elems.back().run.insert(elems.back().run.end(), first.run.begin(), first.run.end());
        elems.erase(elems.begin());
      }
      // all-special chromosome
      if (elems.size() == 1 && elems[0].block) {
        Vertex v;
        v.alive = true;
        v.singular = true;
        v.side = side;
        v.content = elems[0].run;
        std::int32_t vid = std::int32_t(g.verts.size());
        g.verts.push_back(std::move(v));
        if (circular) g.new_edge(side, {vid, 1}, {vid, 0});
        continue;
      }
      // materialize block vertices; compute entry/exit ports per element
      std::vector<Port> entry(elems.size()), exit(elems.size());
      for (std::size_t i = 0; i < elems.size(); ++i) {
        if (elems[i].block) {
          Vertex v;
          v.alive = true;
          v.singular = true;
          v.side = side;
          v.content = elems[i].run;
          std::int32_t vid = std::int32_t(g.verts.size());
          g.verts.push_back(std::move(v));
          entry[i] = {vid, 0};
          exit[i] = {vid, 1};
        } else {
          entry[i] = {conv.at(entry_ext(elems[i].gene)), int(side)};
          exit[i] = {conv.at(exit_ext(elems[i].gene)), int(side)};
        }
      }
      std::size_t n = elems.size();
      std::size_t last = circular ? n : n - 1;
      for (std::size_t i = 0; i < last; ++i)
        g.new_edge(side, exit[i], entry[(i + 1) % n]);
    }
  };
  add_side(a, Side::A);
  add_side(b, Side::B);
  g.reindex();
  return g;
}

// --- low-level mutators ----------------------------------------------------

std::int32_t BreakpointGraph::new_edge(EdgeLabel l, Port p, Port q) {
  for (Port* pp : {&p, &q}) {
    Vertex& v = verts[pp->v];
    if (!v.alive) throw GraphError("new_edge on dead vertex");
    if (!v.singular) {
      pp->slot = int(l);
      if (v.slot[pp->slot] >= 0) throw GraphError("conventional slot occupied");
    } else {
      if (v.side != l) throw GraphError("singular vertex label mismatch");
      if (v.slot[pp->slot] >= 0) throw GraphError("singular slot occupied");
    }
  }
  if (p.v == q.v && p.slot == q.slot) throw GraphError("degenerate loop port");
  Edge e;
  e.alive = true;
  e.label = l;
  e.at = {p, q};
  std::int32_t eid = std::int32_t(edges.size());
  edges.push_back(e);
  verts[p.v].slot[p.slot] = eid;
  verts[q.v].slot[q.slot] = eid;
  return eid;
}

void BreakpointGraph::detach_edge(std::int32_t eid) {
  Edge& e = edges[eid];
  if (!e.alive) throw GraphError("detach dead edge");
  for (const Port& p : e.at)
    if (verts[p.v].slot[p.slot] == eid) verts[p.v].slot[p.slot] = -1;
  e.alive = false;
}

std::int32_t BreakpointGraph::contract_join(std::int32_t eid) {
  Edge& e = edges[eid];
  Vertex& x = verts[e.at[0].v];
  Vertex& y = verts[e.at[1].v];
  if (!x.singular || !y.singular || x.side != y.side)
    throw GraphError("contract_join needs same-side singular endpoints");
  if (e.at[0].v == e.at[1].v) throw GraphError("contract_join on loop");
  int sx = e.at[0].slot, sy = e.at[1].slot;

  std::vector<SignedGene> merged;
  auto revflip = [](const std::vector<SignedGene>& v) {
    std::vector<SignedGene> r(v.rbegin(), v.rend());
    for (auto& g : r) g.reverse = !g.reverse;
    return r;
  };
  // traversal through the join reads x from its other slot into sx, then y
  // from sy out of its other slot
  if (sx == 1)
    merged = x.content;
  else
    merged = revflip(x.content);
  auto ypart = (sy == 0) ? y.content : revflip(y.content);
  merged.insert(merged.end(), ypart.begin(), ypart.end());

  std::int32_t e0 = x.slot[1 - sx];  // stays as merged slot 0
  std::int32_t e1 = y.slot[1 - sy];  // becomes merged slot 1
  std::int32_t xv = e.at[0].v, yv = e.at[1].v;

  e.alive = false;
  x.content = std::move(merged);
  x.slot = {e0, e1};
  // re-point surviving edges
  if (e0 >= 0)
    for (Port& p : edges[e0].at)
      if (p.v == xv) p.slot = 0;
  if (e1 >= 0)
    for (Port& p : edges[e1].at) {
      if (p.v == yv) {
        p.v = xv;
        p.slot = 1;
      }
    }
  // careful: e0 and e1 may be the same edge (x and y joined at both ends):
  // then the surviving edge becomes a loop at x
  y.alive = false;
  y.slot = {-1, -1};
  y.content.clear();
  return xv;
}

void BreakpointGraph::kill_vertex(std::int32_t v) {
  Vertex& vv = verts[v];
  if (vv.slot[0] >= 0 || vv.slot[1] >= 0) throw GraphError("kill_vertex with live edges");
  vv.alive = false;
}

// --- queries ---------------------------------------------------------------

std::int32_t BreakpointGraph::other_edge(std::int32_t v, std::int32_t e) const {
  const Vertex& vv = verts[v];
  if (vv.slot[0] == e) return vv.slot[1] == e ? -1 : vv.slot[1];
  return vv.slot[0];
}

Port BreakpointGraph::peer(std::int32_t e, std::int32_t v) const {
  const Edge& ee = edges[e];
  return ee.at[0].v == v ? ee.at[1] : ee.at[0];
}

bool BreakpointGraph::conv_free_for(std::int32_t v, EdgeLabel l) const {
  const Vertex& vv = verts[v];
  return vv.alive && !vv.singular && vv.slot[int(l)] < 0;
}

std::optional<Port> BreakpointGraph::free_port(std::int32_t v, EdgeLabel l) const {
  const Vertex& vv = verts[v];
  if (!vv.alive) return std::nullopt;
  if (!vv.singular) {
    if (vv.slot[int(l)] < 0) return Port{v, int(l)};
    return std::nullopt;
  }
  if (vv.side != l) return std::nullopt;
  if (vv.slot[0] < 0) return Port{v, 0};
  if (vv.slot[1] < 0) return Port{v, 1};
  return std::nullopt;
}

bool BreakpointGraph::edge_is_conventional(std::int32_t e) const {
  const Edge& ee = edges[e];
  return !verts[ee.at[0].v].singular && !verts[ee.at[1].v].singular;
}

Extremity BreakpointGraph::port_extremity(Port p) const {
  const Vertex& v = verts[p.v];
  if (!v.singular) return v.ext;
  if (p.slot == 0) return entry_ext(v.content.front());
  return exit_ext(v.content.back());
}

std::size_t BreakpointGraph::alive_vertex_count() const {
  std::size_t n = 0;
  for (const auto& v : verts) n += v.alive;
  return n;
}

std::size_t BreakpointGraph::alive_edge_count() const {
  std::size_t n = 0;
  for (const auto& e : edges) n += e.alive;
  return n;
}

bool BreakpointGraph::in_final_form() const {
  for (const auto& [id, c] : comps_)
    if (!c.is_final()) return false;
  return true;
}

// --- walking & summaries -----------------------------------------------------

BreakpointGraph::Walk BreakpointGraph::walk_component(std::int32_t seed) const {
  const Vertex& s = verts[seed];
  if (!s.alive) throw GraphError("walk from dead vertex");
  Walk w;
  if (s.degree() == 0) {
    w.shape = s.singular ? Shape::IsoSing : Shape::IsoConv;
    w.vs = {seed};
    return w;
  }
  if (s.has_loop()) {
    w.shape = Shape::Loop;
    w.vs = {seed};
    w.es = {s.slot[0]};
    return w;
  }
  // walk in direction of slot[0]'s edge (or slot[1] if empty) until an end
  // or back to seed
  auto step = [&](std::int32_t v, std::int32_t via) -> std::int32_t {
    return other_edge(v, via);
  };
  std::int32_t e0 = s.slot[0] >= 0 ? s.slot[0] : s.slot[1];
  std::int32_t cur = seed, via = e0;
  bool cycle = false;
  while (true) {
    std::int32_t nxt = peer(via, cur).v;
    if (nxt == seed && step(nxt, via) == e0) {
      // uses both of seed's edges: closed cycle
      cycle = true;
      break;
    }
    std::int32_t ne = step(nxt, via);
    if (ne < 0) {
      cur = nxt;
      break;  // nxt is an end
    }
    cur = nxt;
    via = ne;
  }
  if (cycle) {
    w.shape = Shape::Cycle;
    std::int32_t v = seed, e = e0;
    while (true) {
      w.vs.push_back(v);
      w.es.push_back(e);
      std::int32_t nv = peer(e, v).v;
      if (nv == seed) break;
      v = nv;
      e = step(v, e);
    }
    return w;
  }
  // cur is one end; walk the chain from it
  w.shape = Shape::Chain;
  std::int32_t v = cur;
  std::int32_t e = verts[v].slot[0] >= 0 ? verts[v].slot[0] : verts[v].slot[1];
  w.vs.push_back(v);
  while (e >= 0) {
    w.es.push_back(e);
    v = peer(e, v).v;
    w.vs.push_back(v);
    e = step(v, e);
  }
  // canonical orientation: smaller end vertex first (keeps summaries stable
  // across re-walks from different seeds)
  if (w.vs.front() > w.vs.back()) {
    std::reverse(w.vs.begin(), w.vs.end());
    std::reverse(w.es.begin(), w.es.end());
  }
  return w;
}

CompInfo BreakpointGraph::summarize(const Walk& w) const {
  CompInfo c;
  c.shape = w.shape;
  if (w.shape == Shape::IsoConv) {
    c.size = 0;
    c.endv = {w.vs[0], w.vs[0]};
    return c;
  }
  if (w.shape == Shape::IsoSing) {
    const Vertex& v = verts[w.vs[0]];
    c.n_sing[int(v.side)] = 1;
    c.size = -1;
    c.res = {1, v.side, true, true};
    c.endv = {w.vs[0], w.vs[0]};
    c.rep_sing[int(v.side)] = w.vs[0];
    return c;
  }
  if (w.shape == Shape::Loop) {
    const Vertex& v = verts[w.vs[0]];
    c.n_sing[int(v.side)] = 1;
    c.size = 0;
    c.endv = {w.vs[0], w.vs[0]};
    c.rep_sing[int(v.side)] = w.vs[0];
    return c;
  }

  int deg2sing = 0;
  std::vector<Side> sing_seq;
  for (std::int32_t vid : w.vs) {
    const Vertex& v = verts[vid];
    if (v.singular) {
      c.n_sing[int(v.side)]++;
      if (v.degree() == 2) ++deg2sing;
      sing_seq.push_back(v.side);
      if (c.rep_sing[int(v.side)] < 0) c.rep_sing[int(v.side)] = vid;
    }
  }
  std::vector<bool> conv_edge(w.es.size());
  for (std::size_t i = 0; i < w.es.size(); ++i) {
    conv_edge[i] = edge_is_conventional(w.es[i]);
    if (conv_edge[i]) c.n_conv++;
  }
  c.size = c.n_conv + deg2sing;

  // residual summary (chains)
  if (w.shape == Shape::Chain) {
    c.endv = {w.vs.front(), w.vs.back()};
    int m = 0;
    Side prev = Side::A;
    for (Side s : sing_seq) {
      if (m == 0 || s != prev) {
        ++m;
        if (m == 1) c.res.first_side = s;
      }
      prev = s;
    }
    c.res.runs = m;
    if (m > 0) {
      if (verts[w.vs.front()].singular) {
        c.res.hang0 = true;
      } else {
        int lead = 0;
        for (std::size_t i = 0; i < w.es.size() && conv_edge[i]; ++i) ++lead;
        c.res.hang0 = (lead % 2 == 1);
      }
      if (verts[w.vs.back()].singular) {
        c.res.hang1 = true;
      } else {
        int trail = 0;
        for (std::size_t i = w.es.size(); i > 0 && conv_edge[i - 1]; --i) ++trail;
        c.res.hang1 = (trail % 2 == 1);
      }
    }
  } else {
    c.endv = {w.vs.front(), w.vs.front()};
  }

  // closed-form stage-1 nonspecial op count
  long s = 0;
  if (sing_seq.empty()) {
    if (w.shape == Shape::Chain)
      s = (long(c.n_conv) + 1) / 2;
    else
      s = long(c.n_conv) / 2 - 1;
  } else if (w.shape == Shape::Chain) {
    std::size_t i = 0;
    while (i < w.es.size()) {
      if (!conv_edge[i]) {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < w.es.size() && conv_edge[j]) ++j;
      long l = long(j - i);
      bool end_seg = (i == 0) || (j == w.es.size());
      s += end_seg ? (l + 1) / 2 : l / 2;
      i = j;
    }
  } else {
    // cycle with singulars: conventional runs are circular
    std::size_t n = w.es.size();
    std::size_t start = 0;
    while (start < n && conv_edge[start]) ++start;
    // start is a singular edge; scan runs from there
    std::size_t i = start + 1;
    long run = 0;
    for (std::size_t k = 0; k < n; ++k, ++i) {
      std::size_t idx = i % n;
      if (k == n - 1 && idx == start) break;
      if (conv_edge[idx])
        ++run;
      else {
        s += run / 2;
        run = 0;
      }
    }
    s += run / 2;
  }
  c.s_ops = s;
  return c;
}

// --- component index ---------------------------------------------------------

std::int64_t BreakpointGraph::install_component(std::int32_t seed) {
  Walk w = walk_component(seed);
  CompInfo info = summarize(w);
  info.id = next_comp_id_++;
  for (std::int32_t v : w.vs) comp_id_[v] = info.id;
  comp_seed_[info.id] = w.vs[0];
  comps_[info.id] = info;
  return info.id;
}

void BreakpointGraph::reindex() {
  comp_id_.assign(verts.size(), -1);
  comps_.clear();
  comp_seed_.clear();
  next_comp_id_ = 0;
  for (std::size_t v = 0; v < verts.size(); ++v)
    if (verts[v].alive && comp_id_[v] < 0) install_component(std::int32_t(v));
}

std::vector<std::int64_t> BreakpointGraph::refresh(const std::vector<std::int32_t>& seeds) {
  comp_id_.resize(verts.size(), -1);
  std::int64_t watermark = next_comp_id_;
  std::set<std::int64_t> stale;
  std::vector<std::int64_t> created;
  for (std::int32_t sv : seeds) {
    if (sv < 0 || std::size_t(sv) >= verts.size()) continue;
    if (!verts[sv].alive) {
      if (comp_id_[sv] >= 0 && comp_id_[sv] < watermark) stale.insert(comp_id_[sv]);
      comp_id_[sv] = -1;
      continue;
    }
    if (comp_id_[sv] >= watermark) continue;  // already rebuilt this round
    if (comp_id_[sv] >= 0) stale.insert(comp_id_[sv]);
    Walk w = walk_component(sv);
    for (std::int32_t v : w.vs)
      if (comp_id_[v] >= 0 && comp_id_[v] < watermark) stale.insert(comp_id_[v]);
    CompInfo info = summarize(w);
    info.id = next_comp_id_++;
    for (std::int32_t v : w.vs) comp_id_[v] = info.id;
    comp_seed_[info.id] = w.vs[0];
    comps_[info.id] = info;
    created.push_back(info.id);
  }
  for (std::int64_t id : stale) {
    comps_.erase(id);
    comp_seed_.erase(id);
  }
  return created;
}

std::int64_t BreakpointGraph::comp_of(std::int32_t v) const {
  if (!verts[v].alive) throw GraphError("comp_of dead vertex");
  return comp_id_[v];
}

std::vector<std::int64_t> BreakpointGraph::comp_ids() const {
  std::vector<std::int64_t> out;
  out.reserve(comps_.size());
  for (const auto& [id, c] : comps_) out.push_back(id);
  return out;
}

std::int32_t BreakpointGraph::comp_root_vertex(std::int64_t id) const {
  return comp_seed_.at(id);
}

// --- classification wrappers ------------------------------------------------

int component_size(const BreakpointGraph& g, std::int64_t comp) { return g.comp(comp).size; }

ChainType classify_chain(const BreakpointGraph& g, std::int64_t comp) {
  const CompInfo& c = g.comp(comp);
  if (c.shape != Shape::Chain && c.shape != Shape::IsoSing && c.shape != Shape::IsoConv)
    throw GraphError("classify_chain: component is not a chain");
  if (c.shape == Shape::IsoConv) return ChainType::E0;
  return c.ctype();
}

ComponentClass classify_component(const BreakpointGraph& g, std::int64_t comp) {
  return g.comp(comp).cls();
}

// --- invariants ----------------------------------------------------------------

void BreakpointGraph::check_invariants() const {
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Edge& e = edges[i];
    if (!e.alive) continue;
    for (const Port& p : e.at) {
      const Vertex& v = verts[p.v];
      if (!v.alive) throw GraphError("edge endpoint dead");
      if (v.slot[p.slot] != std::int32_t(i)) throw GraphError("slot back-pointer broken");
      if (!v.singular && p.slot != int(e.label)) throw GraphError("conventional slot/label mismatch");
      if (v.singular && v.side != e.label) throw GraphError("singular side/label mismatch");
    }
    if (e.is_loop() && !verts[e.at[0].v].singular) throw GraphError("loop at conventional vertex");
  }
  for (std::size_t i = 0; i < verts.size(); ++i) {
    const Vertex& v = verts[i];
    if (!v.alive) continue;
    if (v.singular && v.content.empty()) throw GraphError("singular vertex without content");
    for (int s = 0; s < 2; ++s) {
      if (v.slot[s] < 0) continue;
      const Edge& e = edges[v.slot[s]];
      if (!e.alive) throw GraphError("slot points to dead edge");
      bool found = false;
      for (const Port& p : e.at)
        if (p.v == std::int32_t(i) && p.slot == s) found = true;
      if (!found) throw GraphError("slot/port mismatch");
    }
  }
  // index consistency: recompute and compare partition + summaries
  BreakpointGraph copy = *this;
  copy.reindex();
  if (copy.comps_.size() != comps_.size()) throw GraphError("component count drift");
  for (const auto& [id, c] : comps_) {
    std::int32_t seedv = comp_seed_.at(id);
    std::int64_t cid = copy.comp_id_[seedv];
    const CompInfo& d = copy.comps_.at(cid);
    if (c.shape != d.shape || c.n_conv != d.n_conv || c.n_sing != d.n_sing ||
        c.size != d.size || c.s_ops != d.s_ops)
      throw GraphError("component summary drift");
    if ((c.shape == Shape::Chain || c.shape == Shape::IsoSing) &&
        (c.res.runs != d.res.runs || c.res.size() != d.res.size() || c.ctype() != d.ctype()))
      throw GraphError("residual summary drift");
  }
}

// --- DOT export ------------------------------------------------------------------

std::string BreakpointGraph::to_dot() const {
  std::ostringstream os;
  os << "graph breakpoint {\n";
  int sub = 0;
  for (const auto& [id, c] : comps_) {
    os << "  subgraph cluster_" << sub++ << " {\n";
    Walk w = walk_component(comp_seed_.at(id));
    for (std::int32_t vid : w.vs) {
      const Vertex& v = verts[vid];
      os << "    v" << vid << " [";
      if (v.singular) {
        os << "shape=circle, width=0.5, label=\"" << side_name(v.side);
        for (const auto& g : v.content) os << ' ' << (g.reverse ? "-" : "") << g.id;
        os << "\"";
      } else {
        os << "shape=circle, width=0.1, label=\"" << v.ext.str() << "\"";
      }
      os << "];\n";
    }
    std::set<std::int32_t> seen;
    for (std::int32_t eid : w.es) {
      if (!seen.insert(eid).second) continue;
      const Edge& e = edges[eid];
      os << "    v" << e.at[0].v << " -- v" << e.at[1].v << " [label=\""
         << side_name(e.label) << "\"];\n";
    }
    os << "  }\n";
  }
  os << "}\n";
  return os.str();
}

// --- reading structures back off the graph -----------------------------------

GenomeStructure read_structure(const BreakpointGraph& g, Side side) {
  std::vector<GeneId> genes;
  std::vector<Adjacency> adj;
  for (const auto& v : g.verts) {
    if (!v.alive) continue;
    if (!v.singular) {
      if (v.ext.end == GeneEnd::Tail) genes.push_back(v.ext.gene);
    } else if (v.side == side) {
      for (const auto& sg : v.content) genes.push_back(sg.id);
      for (std::size_t i = 0; i + 1 < v.content.size(); ++i)
        adj.emplace_back(exit_ext(v.content[i]), entry_ext(v.content[i + 1]));
    }
  }
  for (const auto& e : g.edges) {
    if (!e.alive || e.label != side) continue;
    adj.emplace_back(g.port_extremity(e.at[0]), g.port_extremity(e.at[1]));
  }
  return structure_from_adjacencies(genes, adj);
}

}  // namespace chaincycle
