#include "chaincycle/script.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace chaincycle {

namespace {

std::string genes_text(const std::vector<SignedGene>& gs) {
  std::string out;
  for (std::size_t i = 0; i < gs.size(); ++i) {
    if (i) out += ' ';
    if (gs[i].reverse) out += '-';
    out += std::to_string(gs[i].id);
  }
  return out;
}

std::string adj_text(const Adjacency& a) { return a.first.str() + "," + a.second.str(); }

StructureOp from_record(const TraceRecord& r) {
  StructureOp op;
  op.cost = r.cost;
  switch (r.kind) {
    case OpKind::DM:
      op.kind = StructOpKind::DCJ2;
      op.cut = r.cut;
      op.made = r.made;
      break;
    case OpKind::SM:
      op.kind = StructOpKind::DCJ1;
      op.cut = r.cut;
      op.made = r.made;
      break;
    case OpKind::OM:
      op.kind = StructOpKind::Merge;
      op.made = r.made;
      break;
    case OpKind::Cut:
      op.kind = StructOpKind::Cut;
      op.cut = r.cut;
      break;
    case OpKind::Rem:
      op.kind = StructOpKind::Delete;
      op.segment = r.segment;
      switch (r.rem_shape) {
        case RemShape::Deg2:
          op.shape = SegmentShape::Interior;
          op.flanks = r.made.at(0);
          break;
        case RemShape::Deg1:
          op.shape = SegmentShape::AtEnd;
          op.flanks = {r.made.at(0).first, r.made.at(0).first};
          op.attach_front = r.rem_front;
          break;
        case RemShape::Deg0Linear:
          op.shape = SegmentShape::WholeLinear;
          break;
        case RemShape::Loop:
          op.shape = SegmentShape::WholeCircular;
          break;
      }
      break;
  }
  return op;
}

StructureOp invert(const StructureOp& op) {
  StructureOp inv = op;
  switch (op.kind) {
    case StructOpKind::DCJ2:
    case StructOpKind::DCJ1:
      inv.cut = op.made;
      inv.made = op.cut;
      break;
    case StructOpKind::Merge:
      inv.kind = StructOpKind::Cut;
      inv.cut = op.made;
      inv.made.clear();
      break;
    case StructOpKind::Cut:
      inv.kind = StructOpKind::Merge;
      inv.made = op.cut;
      inv.cut.clear();
      break;
    case StructOpKind::Delete:
      inv.kind = StructOpKind::Insert;
      break;
    case StructOpKind::Insert:
      inv.kind = StructOpKind::Delete;
      break;
  }
  return inv;
}

// mutable structure state for applying scripts
struct State {
  std::set<GeneId> genes;
  std::map<Extremity, Extremity> adj;

  void add_adj(const Adjacency& a) {
    if (adj.count(a.first) || adj.count(a.second))
      throw InvalidOperand("merge on non-free extremity " + adj_text(a));
    if (!genes.count(a.first.gene) || !genes.count(a.second.gene))
      throw InvalidOperand("adjacency names unknown gene " + adj_text(a));
    adj[a.first] = a.second;
    adj[a.second] = a.first;
  }
  bool has_adj(const Adjacency& a) const {
    auto it = adj.find(a.first);
    return it != adj.end() && it->second == a.second;
  }
  void remove_adj(const Adjacency& a) {
    if (!has_adj(a)) throw InvalidOperand("cut on absent adjacency " + adj_text(a));
    adj.erase(a.first);
    adj.erase(a.second);
  }
};

}  // namespace

Script reconstruct_script(const GenomeStructure& a, const GenomeStructure& b,
                          const std::vector<TraceRecord>& trace) {
  (void)a;
  (void)b;
  Script s;
  s.total_cost = Rational(0);
  for (const auto& r : trace) {
    if (!r.side) throw NonFinalTrace("trace record without side");
    if (*r.side != Side::A) continue;
    s.ops.push_back(from_record(r));
    s.total_cost += r.cost;
  }
  for (auto it = trace.rbegin(); it != trace.rend(); ++it) {
    if (*it->side != Side::B) continue;
    s.ops.push_back(invert(from_record(*it)));
    s.total_cost += it->cost;
  }
  return s;
}

GenomeStructure apply_script(const GenomeStructure& a, const Script& script) {
  validate_structure(a);
  State st;
  for (const auto& c : a.chromosomes)
    for (const auto& g : c.genes) st.genes.insert(g.id);
  for (const auto& ad : structure_adjacencies(a)) st.add_adj(ad);

  std::size_t stepno = 0;
  for (const auto& op : script.ops) {
    ++stepno;
    try {
      switch (op.kind) {
        case StructOpKind::Cut:
          st.remove_adj(op.cut.at(0));
          break;
        case StructOpKind::Merge:
          st.add_adj(op.made.at(0));
          break;
        case StructOpKind::DCJ2:
          st.remove_adj(op.cut.at(0));
          st.remove_adj(op.cut.at(1));
          st.add_adj(op.made.at(0));
          st.add_adj(op.made.at(1));
          break;
        case StructOpKind::DCJ1:
          st.remove_adj(op.cut.at(0));
          st.add_adj(op.made.at(0));
          break;
        case StructOpKind::Delete: {
          const auto& seg = op.segment;
          if (seg.empty()) throw InvalidOperand("empty segment");
          // remove flank adjacencies
          if (op.shape == SegmentShape::Interior) {
            st.remove_adj({op.flanks.first, entry_ext(seg.front())});
            st.remove_adj({exit_ext(seg.back()), op.flanks.second});
          } else if (op.shape == SegmentShape::AtEnd) {
            if (op.attach_front)
              st.remove_adj({op.flanks.first, entry_ext(seg.front())});
            else
              st.remove_adj({exit_ext(seg.back()), op.flanks.first});
          } else if (op.shape == SegmentShape::WholeCircular) {
            st.remove_adj({exit_ext(seg.back()), entry_ext(seg.front())});
          }
          // internal adjacencies and the genes themselves
          for (std::size_t i = 0; i + 1 < seg.size(); ++i)
            st.remove_adj({exit_ext(seg[i]), entry_ext(seg[i + 1])});
          for (const auto& g : seg) {
            if (!st.genes.erase(g.id))
              throw InvalidOperand("deleting unknown gene " + std::to_string(g.id));
          }
          if (op.shape == SegmentShape::Interior) st.add_adj(op.flanks);
          break;
        }
        case StructOpKind::Insert: {
          const auto& seg = op.segment;
          if (seg.empty()) throw InvalidOperand("empty segment");
          for (const auto& g : seg)
            if (!st.genes.insert(g.id).second)
              throw InvalidOperand("inserting duplicate gene " + std::to_string(g.id));
          for (std::size_t i = 0; i + 1 < seg.size(); ++i)
            st.add_adj({exit_ext(seg[i]), entry_ext(seg[i + 1])});
          if (op.shape == SegmentShape::Interior) {
            st.remove_adj(op.flanks);
            st.add_adj({op.flanks.first, entry_ext(seg.front())});
            st.add_adj({exit_ext(seg.back()), op.flanks.second});
          } else if (op.shape == SegmentShape::AtEnd) {
            if (op.attach_front)
              st.add_adj({op.flanks.first, entry_ext(seg.front())});
            else
              st.add_adj({exit_ext(seg.back()), op.flanks.first});
          } else if (op.shape == SegmentShape::WholeCircular) {
            st.add_adj({exit_ext(seg.back()), entry_ext(seg.front())});
          }
          break;
        }
      }
    } catch (const InvalidOperand& e) {
      throw InvalidOperand("step " + std::to_string(stepno) + ": " + e.what());
    }
  }
  std::vector<GeneId> genes(st.genes.begin(), st.genes.end());
  std::vector<Adjacency> adj;
  for (const auto& [x, y] : st.adj)
    if (x < y) adj.emplace_back(x, y);
  return structure_from_adjacencies(genes, adj);
}

std::string StructureOp::str() const {
  std::ostringstream os;
  switch (kind) {
    case StructOpKind::DCJ2:
      os << "dcj2 <" << adj_text(cut.at(0)) << "|" << adj_text(cut.at(1)) << "> -> <"
         << adj_text(made.at(0)) << "|" << adj_text(made.at(1)) << ">";
      break;
    case StructOpKind::DCJ1:
      os << "dcj1 <" << adj_text(cut.at(0)) << "> -> <" << adj_text(made.at(0)) << ">";
      break;
    case StructOpKind::Merge:
      os << "merge " << made.at(0).first.str() << " " << made.at(0).second.str();
      break;
    case StructOpKind::Cut:
      os << "cut " << adj_text(cut.at(0));
      break;
    case StructOpKind::Delete:
    case StructOpKind::Insert: {
      os << (kind == StructOpKind::Delete ? "del " : "ins ") << genes_text(segment) << " @ ";
      switch (shape) {
        case SegmentShape::Interior: os << adj_text(flanks); break;
        case SegmentShape::AtEnd:
          os << flanks.first.str() << (attach_front ? "" : "'");
          break;
        case SegmentShape::WholeLinear: os << "telomere"; break;
        case SegmentShape::WholeCircular: os << "circular"; break;
      }
      break;
    }
  }
  return os.str();
}

std::string Script::to_text() const {
  std::string out;
  for (const auto& op : ops) {
    out += op.str();
    out += '\n';
  }
  return out;
}

}  // namespace chaincycle
