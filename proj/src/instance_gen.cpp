#include "chaincycle/instance_gen.hpp"

#include <algorithm>
#include <numeric>

namespace chaincycle {

namespace {

GenomeStructure build_structure(SplitMix& rng, std::vector<GeneId> genes,
                                const GenSpec& spec) {
  GenomeStructure s;
  if (genes.empty()) return s;
  // shuffle (Fisher-Yates on the stable stream)
  for (std::size_t i = genes.size(); i > 1; --i)
    std::swap(genes[i - 1], genes[rng.below(i)]);
  int k = std::max(1, std::min<int>(spec.n_chromosomes, int(genes.size())));
  // random split points
  std::vector<std::size_t> cuts;
  cuts.push_back(0);
  std::vector<std::size_t> pool;
  for (std::size_t i = 1; i < genes.size(); ++i) pool.push_back(i);
  for (std::size_t i = pool.size(); i > 1; --i) std::swap(pool[i - 1], pool[rng.below(i)]);
  for (int i = 0; i + 1 < k && std::size_t(i) < pool.size(); ++i) cuts.push_back(pool[i]);
  cuts.push_back(genes.size());
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
    Chromosome chr;
    bool circ = spec.circular_only ||
                std::int64_t(rng.below(std::uint64_t(spec.circular_prob.den()))) <
                    spec.circular_prob.num();
    chr.topology = circ ? Topology::Circular : Topology::Linear;
    for (std::size_t i = cuts[c]; i < cuts[c + 1]; ++i)
      chr.genes.push_back({genes[i], rng.below(2) == 1});
    s.chromosomes.push_back(std::move(chr));
  }
  return s;
}

}  // namespace

std::pair<GenomeStructure, GenomeStructure> gen_pair(const GenSpec& spec) {
  SplitMix root(spec.seed ^ 0xC0FFEE5EEDull);
  SplitMix ra = root.split();
  SplitMix rb = root.split();
  std::vector<GeneId> ga, gb;
  for (int i = 1; i <= spec.n_common; ++i) {
    ga.push_back(i);
    gb.push_back(i);
  }
  for (int i = 0; i < spec.n_special_a; ++i) ga.push_back(spec.n_common + 1 + i);
  for (int i = 0; i < spec.n_special_b; ++i)
    gb.push_back(spec.n_common + spec.n_special_a + 1 + i);
  return {build_structure(ra, std::move(ga), spec), build_structure(rb, std::move(gb), spec)};
}

CostModel gen_cost_model(std::uint64_t seed, CostRegime regime) {
  SplitMix rng(seed ^ 0xBADC0575ull);
  auto frac = [&](std::int64_t lo_num_incl, std::int64_t hi_num_incl, std::int64_t den) {
    std::int64_t p = lo_num_incl + std::int64_t(rng.below(hi_num_incl - lo_num_incl + 1));
    return Rational(p, den);
  };
  auto in_range = [&](const Rational& lo, const Rational& hi, bool lo_open) {
    std::int64_t q = 1 + std::int64_t(rng.below(16));
    // numerators giving lo < p/q <= hi (or lo <= p/q <= hi)
    std::int64_t pmin = (lo.num() * q + lo.den() - 1) / lo.den();  // ceil(lo*q)
    if (lo_open && Rational(pmin, q) == lo) ++pmin;
    if (!lo_open && Rational(pmin, q) < lo) ++pmin;
    std::int64_t pmax = (hi.num() * q) / hi.den();  // floor(hi*q)
    if (pmax < pmin) return Rational(pmin, q);      // degenerate; clamp
    return frac(pmin, pmax, q);
  };
  CostModel cm;
  cm.w = Rational(1);
  Rational lo, hi;
  switch (regime) {
    case CostRegime::Exact:
      lo = in_range(Rational(0), Rational(1), true);
      hi = in_range(Rational(0), Rational(1), true);
      break;
    case CostRegime::Bounded1:
      lo = in_range(Rational(1), Rational(2), false);
      hi = in_range(Rational(1), Rational(2), false);
      break;
    case CostRegime::Bounded2:
      lo = in_range(Rational(1), Rational(2), false);
      hi = in_range(Rational(2), Rational(4), true);
      break;
    case CostRegime::Bounded3:
      lo = in_range(Rational(2), Rational(4), true);
      hi = in_range(Rational(2), Rational(4), true);
      break;
    case CostRegime::Mixed:
      lo = in_range(Rational(1, 16), Rational(1), true);
      if (lo == Rational(1)) lo = Rational(1, 2);
      hi = in_range(Rational(1), Rational(4), true);
      break;
  }
  if (rng.below(2) == 0) {
    cm.w_del = lo;
    cm.w_ins = hi;
  } else {
    cm.w_del = hi;
    cm.w_ins = lo;
  }
  return cm;
}

}  // namespace chaincycle
