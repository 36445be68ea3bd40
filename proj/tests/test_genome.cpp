#include "chaincycle/genome.hpp"
#include "doctest.h"

using namespace chaincycle;

TEST_CASE("parse basic structures") {
  auto s = parse_structure("L 1 -2 3");
  REQUIRE(s.chromosomes.size() == 1);
  CHECK(s.chromosomes[0].topology == Topology::Linear);
  CHECK(s.chromosomes[0].genes ==
        std::vector<SignedGene>{{1, false}, {2, true}, {3, false}});

  auto e = parse_structure("");
  CHECK(e.chromosomes.empty());

  auto c = parse_structure("# comment\n\nC 4 5  # trailing\n");
  REQUIRE(c.chromosomes.size() == 1);
  CHECK(c.chromosomes[0].topology == Topology::Circular);
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(parse_structure("C 4 5\nC 4"), ParseError);   // duplicate
  CHECK_THROWS_AS(parse_structure("L"), ParseError);            // empty chromosome
  CHECK_THROWS_AS(parse_structure("X 1 2"), ParseError);        // malformed
  CHECK_THROWS_AS(parse_structure("L 1 zz"), ParseError);       // malformed token
  CHECK_THROWS_AS(parse_structure("L 0"), ParseError);          // non-positive id
}

TEST_CASE("serialize canonical form") {
  CHECK(serialize_structure(parse_structure("L -2 1 3")) == "L -2 1 3\n");
  CHECK(serialize_structure(parse_structure("C 5 4")) == "C 4 5\n");
  CHECK(serialize_structure(GenomeStructure{}) == "");
  // parse . serialize . parse == parse
  auto s = parse_structure("C 7 -8\nL 3 1\n");
  CHECK(serialize_structure(parse_structure(serialize_structure(s))) ==
        serialize_structure(s));
}

TEST_CASE("structures_equal symmetries") {
  CHECK(structures_equal(parse_structure("C 1 2"), parse_structure("C 2 1")));
  CHECK(structures_equal(parse_structure("L 1 2"), parse_structure("L -2 -1")));
  CHECK(!structures_equal(parse_structure("L 1 2"), parse_structure("L 1 -2")));
  CHECK(structures_equal(parse_structure("C 5"), parse_structure("C -5")));
  CHECK(!structures_equal(parse_structure("L 5"), parse_structure("C 5")));
}

TEST_CASE("adjacency round trip") {
  auto s = parse_structure("L 1 -2 3\nC 4 5\nL 6\n");
  auto adj = structure_adjacencies(s);
  std::vector<GeneId> genes{1, 2, 3, 4, 5, 6};
  auto back = structure_from_adjacencies(genes, adj);
  CHECK(structures_equal(s, back));
}
