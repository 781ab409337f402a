#include <cmath>
#include <string>

#include "rel/core/error.hpp"
#include "rel/core/text.hpp"
#include "rel/phylo/evolve.hpp"

namespace rel::phylo {
namespace {

constexpr char kBases[4] = {'A', 'C', 'G', 'T'};

int base_index(char b) {
  switch (b) {
    case 'A': return 0;
    case 'C': return 1;
    case 'G': return 2;
    default: return 3;
  }
}

}  // namespace

int Alignment::index_of(std::string_view label) const {
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == label) return static_cast<int>(i);
  }
  return -1;
}

double jc_change_probability(double t) {
  return 0.75 * (1.0 - std::exp(-4.0 * t / 3.0));
}

Alignment evolve_alignment(const PhyloTree& tree, int l_seq, SeededRng& rng) {
  if (l_seq < 1) throw ParameterError("sequence length must be >= 1");
  std::vector<std::string> seq(tree.nodes.size());
  std::string& root = seq[tree.root()];
  root.resize(l_seq);
  for (char& c : root) c = kBases[rng.uniform_int(0, 3)];
  // Preorder storage: every parent is filled before its children.
  for (std::size_t v = 1; v < tree.nodes.size(); ++v) {
    const TreeNode& node = tree.nodes[v];
    seq[v] = seq[node.parent];
    double p = jc_change_probability(node.length);
    if (p <= 0.0) continue;
    // Jump straight to the next changed site with geometric gaps.
    double log_keep = std::log1p(-p);
    double pos = -1.0;
    for (;;) {
      double u = rng.uniform01();
      double gap = std::floor(std::log1p(-u) / log_keep);
      pos += gap + 1.0;
      if (pos >= l_seq) break;
      char& c = seq[v][static_cast<std::size_t>(pos)];
      int other = static_cast<int>(rng.uniform_int(0, 2));
      int cur = base_index(c);
      c = kBases[other >= cur ? other + 1 : other];
    }
  }
  Alignment aln;
  for (int leaf : tree.leaves()) {
    aln.labels.push_back(tree.nodes[leaf].label);
    aln.rows.push_back(std::move(seq[leaf]));
  }
  return aln;
}

std::string to_fasta(const Alignment& a) {
  std::string out;
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    out += '>';
    out += a.labels[i];
    out += '\n';
    out += a.rows[i];
    out += '\n';
  }
  return out;
}

Alignment parse_fasta(std::string_view text) {
  Alignment a;
  for (const std::string& raw : split(text, '\n')) {
    std::string_view line = trim(raw);
    if (line.empty()) continue;
    if (line[0] == '>') {
      a.labels.emplace_back(trim(line.substr(1)));
      a.rows.emplace_back();
    } else {
      if (a.rows.empty()) throw ParseError("fasta: sequence before header");
      a.rows.back() += line;
    }
  }
  for (const std::string& r : a.rows) {
    if (r.size() != a.rows[0].size()) {
      throw ParseError("fasta: rows differ in length");
    }
  }
  return a;
}

}  // namespace rel::phylo
