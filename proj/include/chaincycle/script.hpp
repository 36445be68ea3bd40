#pragma once

#include "chaincycle/reducer.hpp"

namespace chaincycle {

struct InvalidOperand : std::runtime_error {
  explicit InvalidOperand(const std::string& w) : std::runtime_error(w) {}
};
struct NonFinalTrace : std::runtime_error {
  explicit NonFinalTrace(const std::string& w) : std::runtime_error(w) {}
};

enum class StructOpKind : std::uint8_t { DCJ2, DCJ1, Merge, Cut, Delete, Insert };

enum class SegmentShape : std::uint8_t {
  Interior,     // both flanks present; delete merges them / insert splits them
  AtEnd,        // one flank; the other side is a telomere
  WholeLinear,  // the whole (linear) chromosome
  WholeCircular // the whole (circular) chromosome
};

struct StructureOp {
  StructOpKind kind = StructOpKind::Cut;
  Rational cost;
  // DCJ2: cut[0..1], made[0..1]; DCJ1: cut[0], made[0]; Merge: made[0];
  // Cut: cut[0]
  std::vector<Adjacency> cut, made;
  // Delete/Insert
  std::vector<SignedGene> segment;
  SegmentShape shape = SegmentShape::Interior;
  Adjacency flanks;        // Interior: both; AtEnd: .first only
  bool attach_front = true;  // AtEnd: flank attaches to the segment front

  std::string str() const;
};

struct Script {
  std::vector<StructureOp> ops;
  Rational total_cost;

  std::string to_text() const;
};

// Builds the a -> b script from a trace that reduces a+b to final form:
// the a-side operations in order, then the inverted b-side operations in
// reverse order.
Script reconstruct_script(const GenomeStructure& a, const GenomeStructure& b,
                          const std::vector<TraceRecord>& trace);

GenomeStructure apply_script(const GenomeStructure& a, const Script& script);

}  // namespace chaincycle
