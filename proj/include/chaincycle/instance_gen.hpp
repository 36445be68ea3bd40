#pragma once

#include "chaincycle/genome.hpp"
#include "chaincycle/ops.hpp"

namespace chaincycle {

// Counter-based splittable generator (splitmix64): stable across platforms.
struct SplitMix {
  std::uint64_t state;
  explicit SplitMix(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
  std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }
  SplitMix split() { return SplitMix(next() ^ 0xA5A5A5A5A5A5A5A5ull); }
};

struct GenSpec {
  std::uint64_t seed = 0;
  int n_common = 3;
  int n_special_a = 1;
  int n_special_b = 1;
  int n_chromosomes = 2;
  Rational circular_prob{1, 2};
  bool circular_only = false;
};

std::pair<GenomeStructure, GenomeStructure> gen_pair(const GenSpec& spec);

enum class CostRegime { Exact, Bounded1, Bounded2, Bounded3, Mixed };

CostModel gen_cost_model(std::uint64_t seed, CostRegime regime);

}  // namespace chaincycle
