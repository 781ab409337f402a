#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "rel/core/rng.hpp"

namespace rel::phylo {

struct TreeNode {
  int parent = -1;
  std::vector<int> children;  // empty for leaves, two for internal nodes
  double length = 0.0;        // edge to parent; unused at the root
  std::string label;          // leaves only

  bool operator==(const TreeNode&) const = default;
};

// Rooted tree, nodes stored in preorder with the root at index 0.
struct PhyloTree {
  std::vector<TreeNode> nodes;

  int root() const { return 0; }
  bool is_leaf(int v) const { return nodes[v].children.empty(); }
  std::vector<int> leaves() const;  // left-to-right order
  std::vector<std::string> leaf_labels() const;
  int find_leaf(std::string_view label) const;  // -1 if absent
  std::size_t n_leaves() const;

  bool operator==(const PhyloTree&) const = default;
};

// Random leaf attachment: each new leaf splits a uniformly chosen edge (or
// the root), which is uniform over rooted labelled topologies. Labels are
// "1".."n" (optionally prefixed) in random order; lengths are uniform on
// [0.1, 1.0] rounded to 4 decimals so that Newick text round-trips.
PhyloTree sample_tree(int n_leaves, SeededRng& rng,
                      std::string_view label_prefix = "");

// Edge count on the path between two leaves.
int topo_distance(const PhyloTree& t, std::string_view a, std::string_view b);
int topo_distance_nodes(const PhyloTree& t, int a, int b);

// "(child,child):len" recursion with 4-decimal lengths and a trailing ';'.
std::string to_newick(const PhyloTree& t);
PhyloTree parse_newick(std::string_view text);

// Depth of every node, used for distance queries.
std::vector<int> node_depths(const PhyloTree& t);

// Rebuilds the node array in preorder (root first, children left to right).
PhyloTree reindex_preorder(const PhyloTree& t);

}  // namespace rel::phylo
