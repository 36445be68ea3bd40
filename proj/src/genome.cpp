#include "chaincycle/genome.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <set>
#include <sstream>

namespace chaincycle {

std::size_t GenomeStructure::gene_count() const {
  std::size_t n = 0;
  for (const auto& c : chromosomes) n += c.genes.size();
  return n;
}

std::vector<GeneId> GenomeStructure::gene_ids() const {
  std::vector<GeneId> ids;
  ids.reserve(gene_count());
  for (const auto& c : chromosomes)
    for (const auto& g : c.genes) ids.push_back(g.id);
  std::sort(ids.begin(), ids.end());
  return ids;
}

void validate_structure(const GenomeStructure& s) {
  std::set<GeneId> seen;
  for (const auto& c : s.chromosomes) {
    if (c.genes.empty()) throw ParseError("empty chromosome");
    for (const auto& g : c.genes) {
      if (g.id <= 0) throw ParseError("non-positive gene id " + std::to_string(g.id));
      if (!seen.insert(g.id).second)
        throw ParseError("duplicate gene name " + std::to_string(g.id));
    }
  }
}

GenomeStructure parse_structure(std::string_view text) {
  GenomeStructure s;
  std::set<GeneId> seen;
  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    // tokenize on spaces
    std::vector<std::string_view> toks;
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      std::size_t j = i;
      while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
      if (j > i) toks.push_back(line.substr(i, j - i));
      i = j;
    }
    if (toks.empty()) continue;
    Chromosome c;
    if (toks[0] == "L")
      c.topology = Topology::Linear;
    else if (toks[0] == "C")
      c.topology = Topology::Circular;
    else
      throw ParseError("malformed line " + std::to_string(lineno) + ": bad topology tag");
    if (toks.size() == 1)
      throw ParseError("empty chromosome at line " + std::to_string(lineno));
    for (std::size_t k = 1; k < toks.size(); ++k) {
      std::int64_t v = 0;
      auto tok = toks[k];
      auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (ec != std::errc() || p != tok.data() + tok.size())
        throw ParseError("malformed line " + std::to_string(lineno) + ": bad token '" + std::string(tok) + "'");
      if (v == 0)
        throw ParseError("non-positive gene id at line " + std::to_string(lineno));
      GeneId id = v < 0 ? -v : v;
      if (!seen.insert(id).second)
        throw ParseError("duplicate gene name " + std::to_string(id));
      c.genes.push_back({id, v < 0});
    }
    s.chromosomes.push_back(std::move(c));
  }
  return s;
}

namespace {

std::vector<SignedGene> reversed_flipped(const std::vector<SignedGene>& g) {
  std::vector<SignedGene> r(g.rbegin(), g.rend());
  for (auto& x : r) x.reverse = !x.reverse;
  return r;
}

std::string genes_str(const std::vector<SignedGene>& g) {
  std::string out;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (i) out += ' ';
    if (g[i].reverse) out += '-';
    out += std::to_string(g[i].id);
  }
  return out;
}

Chromosome canonical_chromosome(const Chromosome& c) {
  Chromosome out = c;
  if (c.topology == Topology::Circular) {
    // rotate so the smallest gene id comes first, forward sign.
    std::size_t best = 0;
    for (std::size_t i = 1; i < c.genes.size(); ++i)
      if (c.genes[i].id < c.genes[best].id) best = i;
    std::vector<SignedGene> rot;
    rot.reserve(c.genes.size());
    for (std::size_t i = 0; i < c.genes.size(); ++i)
      rot.push_back(c.genes[(best + i) % c.genes.size()]);
    if (rot[0].reverse) {
      // read the circle in the other direction starting at the same gene
      auto rev = reversed_flipped(rot);
      std::rotate(rev.begin(), rev.end() - 1, rev.end());
      rot = std::move(rev);
    }
    out.genes = std::move(rot);
  } else {
    auto alt = reversed_flipped(c.genes);
    if (genes_str(alt) < genes_str(c.genes)) out.genes = std::move(alt);
  }
  return out;
}

GeneId min_gene(const Chromosome& c) {
  GeneId m = c.genes[0].id;
  for (const auto& g : c.genes) m = std::min(m, g.id);
  return m;
}

}  // namespace

std::string serialize_structure(const GenomeStructure& s) {
  std::vector<Chromosome> canon;
  canon.reserve(s.chromosomes.size());
  for (const auto& c : s.chromosomes) canon.push_back(canonical_chromosome(c));
  std::sort(canon.begin(), canon.end(), [](const Chromosome& a, const Chromosome& b) {
    return min_gene(a) < min_gene(b);
  });
  std::string out;
  for (const auto& c : canon) {
    out += c.topology == Topology::Linear ? "L " : "C ";
    out += genes_str(c.genes);
    out += '\n';
  }
  return out;
}

bool structures_equal(const GenomeStructure& x, const GenomeStructure& y) {
  return serialize_structure(x) == serialize_structure(y);
}

std::vector<Adjacency> structure_adjacencies(const GenomeStructure& s) {
  std::vector<Adjacency> adj;
  for (const auto& c : s.chromosomes) {
    for (std::size_t i = 0; i + 1 < c.genes.size(); ++i)
      adj.emplace_back(exit_ext(c.genes[i]), entry_ext(c.genes[i + 1]));
    if (c.topology == Topology::Circular)
      adj.emplace_back(exit_ext(c.genes.back()), entry_ext(c.genes.front()));
  }
  return adj;
}

GenomeStructure structure_from_adjacencies(const std::vector<GeneId>& genes,
                                           const std::vector<Adjacency>& adj) {
  std::map<Extremity, Extremity> link;
  for (const auto& [x, y] : adj) {
    if (link.count(x) || link.count(y))
      throw std::invalid_argument("extremity in two adjacencies");
    link[x] = y;
    link[y] = x;
  }
  std::set<GeneId> todo(genes.begin(), genes.end());
  GenomeStructure out;

  auto walk = [&](SignedGene start, bool circular) {
    Chromosome c;
    c.topology = circular ? Topology::Circular : Topology::Linear;
    SignedGene cur = start;
    while (true) {
      c.genes.push_back(cur);
      todo.erase(cur.id);
      auto it = link.find(exit_ext(cur));
      if (it == link.end()) break;  // telomere
      Extremity nxt = it->second;
      SignedGene ng{nxt.gene, nxt.end == GeneEnd::Head};
      if (ng.id == start.id && entry_ext(ng) == entry_ext(start)) break;  // closed circle
      cur = ng;
    }
    out.chromosomes.push_back(std::move(c));
  };

  // linear chromosomes first: start at telomeric tails
  // (deterministic: scan genes in sorted id order)
  std::vector<GeneId> order(todo.begin(), todo.end());
  for (GeneId id : order) {
    if (!todo.count(id)) continue;
    bool tail_free = !link.count({id, GeneEnd::Tail});
    bool head_free = !link.count({id, GeneEnd::Head});
    if (tail_free && !head_free)
      walk({id, false}, false);
    else if (head_free && !tail_free)
      walk({id, true}, false);
    else if (tail_free && head_free) {
      out.chromosomes.push_back({Topology::Linear, {{id, false}}});
      todo.erase(id);
    }
  }
  // what remains is circular
  order.assign(todo.begin(), todo.end());
  for (GeneId id : order) {
    if (!todo.count(id)) continue;
    walk({id, false}, true);
  }
  return out;
}

}  // namespace chaincycle
