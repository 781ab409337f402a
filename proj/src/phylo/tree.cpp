#include <algorithm>
#include <cmath>
#include <string>

#include "rel/core/error.hpp"
#include "rel/phylo/tree.hpp"

namespace rel::phylo {

std::vector<int> PhyloTree::leaves() const {
  std::vector<int> out;
  if (nodes.empty()) return out;
  std::vector<int> stack{root()};
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    if (is_leaf(v)) out.push_back(v);
    for (auto it = nodes[v].children.rbegin(); it != nodes[v].children.rend();
         ++it) {
      stack.push_back(*it);
    }
  }
  return out;
}

std::vector<std::string> PhyloTree::leaf_labels() const {
  std::vector<std::string> out;
  for (int v : leaves()) out.push_back(nodes[v].label);
  return out;
}

int PhyloTree::find_leaf(std::string_view label) const {
  for (std::size_t v = 0; v < nodes.size(); ++v) {
    if (nodes[v].children.empty() && nodes[v].label == label) {
      return static_cast<int>(v);
    }
  }
  return -1;
}

std::size_t PhyloTree::n_leaves() const {
  return static_cast<std::size_t>(std::count_if(
      nodes.begin(), nodes.end(),
      [](const TreeNode& n) { return n.children.empty(); }));
}

PhyloTree reindex_preorder(const PhyloTree& t) {
  PhyloTree out;
  if (t.nodes.empty()) return out;
  int root = 0;
  while (t.nodes[root].parent >= 0) root = t.nodes[root].parent;
  std::vector<int> new_id(t.nodes.size(), -1);
  std::vector<int> order;
  std::vector<int> stack{root};
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    new_id[v] = static_cast<int>(order.size());
    order.push_back(v);
    const auto& ch = t.nodes[v].children;
    for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.push_back(*it);
  }
  out.nodes.resize(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    const TreeNode& src = t.nodes[order[i]];
    TreeNode& dst = out.nodes[i];
    dst.parent = src.parent >= 0 ? new_id[src.parent] : -1;
    dst.length = src.length;
    dst.label = src.label;
    for (int c : src.children) dst.children.push_back(new_id[c]);
  }
  return out;
}

PhyloTree sample_tree(int n_leaves, SeededRng& rng,
                      std::string_view label_prefix) {
  if (n_leaves < 2) throw ParameterError("a tree needs at least 2 leaves");
  PhyloTree t;
  t.nodes.reserve(2 * static_cast<std::size_t>(n_leaves) - 1);
  t.nodes.push_back(TreeNode{-1, {1, 2}, 0.0, ""});
  t.nodes.push_back(TreeNode{0, {}, 0.0, ""});
  t.nodes.push_back(TreeNode{0, {}, 0.0, ""});
  int root = 0;
  for (int i = 3; i <= n_leaves; ++i) {
    int v = static_cast<int>(rng.uniform_index(t.nodes.size()));
    int u = static_cast<int>(t.nodes.size());
    int w = u + 1;
    int parent = t.nodes[v].parent;
    bool leaf_left = rng.bernoulli(0.5);
    t.nodes.push_back(TreeNode{parent, {}, 0.0, ""});
    t.nodes.push_back(TreeNode{u, {}, 0.0, ""});
    t.nodes[u].children = leaf_left ? std::vector<int>{w, v}
                                    : std::vector<int>{v, w};
    if (parent < 0) {
      root = u;
    } else {
      auto& pc = t.nodes[parent].children;
      *std::find(pc.begin(), pc.end(), v) = u;
    }
    t.nodes[v].parent = u;
  }
  (void)root;
  t = reindex_preorder(t);

  std::vector<int> ids(n_leaves);
  for (int i = 0; i < n_leaves; ++i) ids[i] = i + 1;
  rng.shuffle(ids);
  int next = 0;
  for (TreeNode& node : t.nodes) {
    if (node.parent >= 0) {
      node.length = std::round(rng.uniform_real(0.1, 1.0) * 1e4) / 1e4;
    }
  }
  for (int v : t.leaves()) {
    t.nodes[v].label = std::string(label_prefix) + std::to_string(ids[next++]);
  }
  return t;
}

std::vector<int> node_depths(const PhyloTree& t) {
  // Preorder storage guarantees parents precede children.
  std::vector<int> depth(t.nodes.size(), 0);
  for (std::size_t v = 1; v < t.nodes.size(); ++v) {
    depth[v] = depth[t.nodes[v].parent] + 1;
  }
  return depth;
}

int topo_distance_nodes(const PhyloTree& t, int a, int b) {
  int d = 0;
  std::vector<int> depth = node_depths(t);
  while (a != b) {
    if (depth[a] >= depth[b]) {
      a = t.nodes[a].parent;
    } else {
      b = t.nodes[b].parent;
    }
    ++d;
  }
  return d;
}

int topo_distance(const PhyloTree& t, std::string_view a, std::string_view b) {
  int va = t.find_leaf(a);
  int vb = t.find_leaf(b);
  if (va < 0) throw ParameterError("unknown taxon '" + std::string(a) + "'");
  if (vb < 0) throw ParameterError("unknown taxon '" + std::string(b) + "'");
  return topo_distance_nodes(t, va, vb);
}

}  // namespace rel::phylo
