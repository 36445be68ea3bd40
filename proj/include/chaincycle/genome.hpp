#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace chaincycle {

using GeneId = std::int64_t;  // gene names are positive integers

// A gene with an orientation. `id` is always positive; `reverse` carries
// the sign from the text format.
struct SignedGene {
  GeneId id = 0;
  bool reverse = false;

  bool operator==(const SignedGene&) const = default;
  SignedGene flipped() const { return {id, !reverse}; }
};

enum class Topology { Linear, Circular };

struct Chromosome {
  Topology topology = Topology::Linear;
  std::vector<SignedGene> genes;  // nonempty

  bool operator==(const Chromosome&) const = default;
};

// A set of chromosomes over distinct gene names. May be empty.
struct GenomeStructure {
  std::vector<Chromosome> chromosomes;

  bool empty() const { return chromosomes.empty(); }
  std::size_t gene_count() const;
  std::vector<GeneId> gene_ids() const;  // sorted
};

struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

enum class GeneEnd : std::uint8_t { Tail = 0, Head = 1 };

// One end of a gene. The tail is the beginning of the gene, the head its
// end; a forward gene is read tail-to-head.
struct Extremity {
  GeneId gene = 0;
  GeneEnd end = GeneEnd::Tail;
  bool operator==(const Extremity&) const = default;
  auto operator<=>(const Extremity&) const = default;
  std::string str() const {
    return std::to_string(gene) + (end == GeneEnd::Head ? "h" : "t");
  }
};

using Adjacency = std::pair<Extremity, Extremity>;

inline Extremity entry_ext(SignedGene g) {
  return {g.id, g.reverse ? GeneEnd::Head : GeneEnd::Tail};
}
inline Extremity exit_ext(SignedGene g) {
  return {g.id, g.reverse ? GeneEnd::Tail : GeneEnd::Head};
}

// Rebuilds a structure from its gene set and adjacency list (each extremity
// in at most one adjacency; unmatched extremities are telomeres).
GenomeStructure structure_from_adjacencies(const std::vector<GeneId>& genes,
                                           const std::vector<Adjacency>& adj);

// The adjacency set of a structure (telomeres omitted).
std::vector<Adjacency> structure_adjacencies(const GenomeStructure& s);

// Line format: `L i1 i2 ...` / `C i1 i2 ...`, `#` comments, blank lines
// ignored. Throws ParseError on duplicate names, empty chromosomes,
// malformed lines, or non-positive gene ids.
GenomeStructure parse_structure(std::string_view text);

// Canonical form: chromosomes sorted by smallest gene id; circular
// chromosomes rotated so the smallest id comes first with forward sign when
// possible; linear chromosomes emitted in the lexicographically smaller of
// the two reading directions.
std::string serialize_structure(const GenomeStructure& s);

// Equality up to chromosome order, circular rotation, and whole-chromosome
// reversal.
bool structures_equal(const GenomeStructure& x, const GenomeStructure& y);

void validate_structure(const GenomeStructure& s);

}  // namespace chaincycle
