#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "chaincycle/genome.hpp"

namespace chaincycle {

struct GraphError : std::runtime_error {
  explicit GraphError(const std::string& what) : std::runtime_error(what) {}
};

enum class Side : std::uint8_t { A = 0, B = 1 };
inline Side other(Side s) { return s == Side::A ? Side::B : Side::A; }
inline const char* side_name(Side s) { return s == Side::A ? "a" : "b"; }

// Edge labels coincide with vertex sides: every edge incident to a singular
// vertex carries that vertex's side label.
using EdgeLabel = Side;

// Attachment point: a vertex plus one of its two slots. Conventional
// vertices key slots by edge label (slot 0 = a, slot 1 = b); singular
// vertices have two block ends (slot 0 = start of content, slot 1 = end).
struct Port {
  std::int32_t v = -1;
  std::int32_t slot = 0;
  bool operator==(const Port&) const = default;
};

struct Vertex {
  bool alive = false;
  bool singular = false;
  Extremity ext;                   // conventional only
  Side side = Side::A;             // singular only
  std::vector<SignedGene> content; // singular only; read slot0 -> slot1
  std::array<std::int32_t, 2> slot = {-1, -1};  // edge ids

  int degree() const {
    int d = 0;
    if (slot[0] >= 0) ++d;
    if (slot[1] >= 0) ++d;
    return d;
  }
  bool has_loop() const { return slot[0] >= 0 && slot[0] == slot[1]; }
};

struct Edge {
  bool alive = false;
  EdgeLabel label = Side::A;
  std::array<Port, 2> at;  // the two endpoints (ports); loop: same vertex
  bool is_loop() const { return at[0].v == at[1].v; }
};

// --- component classification ------------------------------------------

enum class Shape : std::uint8_t { Chain, Cycle, Loop, IsoConv, IsoSing };

// Chain types, computed on the residual chain after virtually cutting off
// all conventional edges. The O/E prefix is the residual-size parity; note
// the crossed naming from the source taxonomy: odd type 1a carries a
// hanging b-edge while even type 1a carries a hanging a-edge.
enum class ChainType : std::uint8_t {
  O1a, O1b,
  O2a_star, O2a_prime, O2b_star, O2b_prime,
  O3a_star, O3a_prime, O3b_star, O3b_prime,
  E1a_star, E1a_prime, E1b_star, E1b_prime,
  E2_star, E2_prime, E3, E0,
};
const char* chain_type_name(ChainType t);

enum class ContentClass : std::uint8_t { AB, AOnly, BOnly, Zero };

struct ComponentClass {
  ContentClass content = ContentClass::Zero;
  Shape shape = Shape::Chain;
  bool is2c = false;
};

// Residual summary of a chain: the run-length structure of its singular
// vertices once conventional edges are (virtually) cut off. `runs` is the
// number of maximal same-side singular groups; hang0/hang1 say whether the
// residual end at each side is a hanging singular (end vertex singular, or
// an odd number of conventional edges before the first singular edge).
struct ResidualSummary {
  int runs = 0;
  Side first_side = Side::A;
  bool hang0 = false, hang1 = false;
  int size() const { return runs - (hang0 ? 1 : 0) - (hang1 ? 1 : 0); }
  Side last_side() const { return runs % 2 == 1 ? first_side : other(first_side); }
};

ChainType classify_residual(const ResidualSummary& r);

struct CompInfo {
  std::int64_t id = -1;  // stable tie-break id (creation order)
  Shape shape = Shape::Chain;
  int n_conv = 0;                   // conventional edges (conv-conv)
  std::array<int, 2> n_sing = {0, 0};
  int size = 0;                     // conv + degree-2 singulars; loop/isoconv 0, isosing -1
  long s_ops = 0;                   // nonspecial cut-off ops of stage-1 (closed form)
  ResidualSummary res;              // chains and isolated singulars
  std::array<std::int32_t, 2> endv = {-1, -1};  // chain ends / the vertex for loop & iso
  std::array<std::int32_t, 2> rep_sing = {-1, -1};  // a singular vertex per side, -1 if none

  int sing_total() const { return n_sing[0] + n_sing[1]; }
  ChainType ctype() const;          // Chain / IsoSing only
  ComponentClass cls() const;
  bool d_flag() const;              // counted in the D metric
  bool is_final() const;            // isolated conventional vertex or plain 2-cycle
};

// --- the graph -----------------------------------------------------------

class BreakpointGraph {
 public:
  std::vector<Vertex> verts;
  std::vector<Edge> edges;

  static BreakpointGraph build(const GenomeStructure& a, const GenomeStructure& b);

  // --- low-level mutators (no component index maintenance) ---
  std::int32_t new_edge(EdgeLabel l, Port p, Port q);
  void detach_edge(std::int32_t e);
  // Merge the two singular endpoints of edge e (same side); the edge
  // disappears, the first endpoint's vertex id survives with concatenated
  // content. Returns the surviving vertex id.
  std::int32_t contract_join(std::int32_t e);
  void kill_vertex(std::int32_t v);

  // --- queries ---
  int degree(std::int32_t v) const { return verts[v].degree(); }
  std::int32_t other_edge(std::int32_t v, std::int32_t e) const;
  Port peer(std::int32_t e, std::int32_t v) const;  // the endpoint that is not v
  bool conv_free_for(std::int32_t v, EdgeLabel l) const;
  std::optional<Port> free_port(std::int32_t v, EdgeLabel l) const;
  bool edge_is_conventional(std::int32_t e) const;
  // Structure-level name of a port: conventional vertices resolve to their
  // extremity, block ends to the outer extremity of the terminal gene.
  Extremity port_extremity(Port p) const;

  std::size_t alive_vertex_count() const;
  std::size_t alive_edge_count() const;
  bool in_final_form() const;

  // --- component index ---
  struct Walk {
    Shape shape;
    std::vector<std::int32_t> vs;  // vertices in order (cycle: around once)
    std::vector<std::int32_t> es;  // edges in order (chain: vs.size()-1)
  };
  Walk walk_component(std::int32_t seed) const;

  CompInfo summarize(const Walk& w) const;

  // Rebuild the whole index from scratch.
  void reindex();
  // Re-walk only components containing the given seed vertices (dead ids
  // ok). Returns the ids of the freshly created components.
  std::vector<std::int64_t> refresh(const std::vector<std::int32_t>& seeds);

  std::int64_t comp_of(std::int32_t v) const;  // component id for a vertex
  const CompInfo& comp(std::int64_t id) const { return comps_.at(id); }
  const std::map<std::int64_t, CompInfo>& components() const { return comps_; }
  // All live component ids (sorted).
  std::vector<std::int64_t> comp_ids() const;
  std::int32_t comp_root_vertex(std::int64_t id) const;  // a live vertex inside

  // Consistency checks used by tests; throws GraphError on violation.
  void check_invariants() const;

  std::string to_dot() const;

 private:
  mutable std::vector<std::int64_t> comp_id_;  // per vertex, -1 dead
  std::map<std::int64_t, CompInfo> comps_;
  std::map<std::int64_t, std::int32_t> comp_seed_;  // comp id -> live vertex
  std::int64_t next_comp_id_ = 0;

  std::int64_t install_component(std::int32_t seed);
};

// classify_component / classify_chain / component_size per the contract.
int component_size(const BreakpointGraph& g, std::int64_t comp);
ChainType classify_chain(const BreakpointGraph& g, std::int64_t comp);
ComponentClass classify_component(const BreakpointGraph& g, std::int64_t comp);

// Reads the two structures back off the graph (walking a-edges and A-blocks,
// then b-edges and B-blocks). Used as the build oracle.
GenomeStructure read_structure(const BreakpointGraph& g, Side side);

}  // namespace chaincycle
