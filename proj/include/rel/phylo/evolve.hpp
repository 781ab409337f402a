#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "rel/core/rng.hpp"
#include "rel/phylo/tree.hpp"

namespace rel::phylo {

// Rows in the tree's left-to-right leaf order.
struct Alignment {
  std::vector<std::string> labels;
  std::vector<std::string> rows;

  std::size_t length() const { return rows.empty() ? 0 : rows[0].size(); }
  int index_of(std::string_view label) const;  // -1 if absent
  bool operator==(const Alignment&) const = default;
};

// Jukes-Cantor probability that a site differs after branch length t.
double jc_change_probability(double t);

// Root drawn uniformly over ACGT; each site changes along a branch with the
// JC probability and, when it does, moves to one of the other three bases.
Alignment evolve_alignment(const PhyloTree& tree, int l_seq, SeededRng& rng);

std::string to_fasta(const Alignment& a);
Alignment parse_fasta(std::string_view text);

}  // namespace rel::phylo
