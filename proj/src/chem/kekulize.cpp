#include "rel/chem/kekulize.hpp"

#include <algorithm>
#include <functional>
#include <queue>

#include "rel/chem/element.hpp"

namespace rel::chem {
namespace {

// Edmonds' blossom search on a small graph. Vertices with removed[v] set are
// invisible. match[v] == -1 means exposed.
class Blossom {
 public:
  Blossom(const std::vector<std::vector<int>>& g, std::vector<int>& match,
          const std::vector<char>* removed = nullptr)
      : g_(g), match_(match), removed_(removed), n_(static_cast<int>(g.size())) {}

  // Grows an alternating tree from `root`; augments and returns true on
  // success.
  bool augment(int root) {
    used_.assign(n_, 0);
    parent_.assign(n_, -1);
    base_.resize(n_);
    for (int i = 0; i < n_; ++i) base_[i] = i;
    used_[root] = 1;
    std::queue<int> q;
    q.push(root);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int to : g_[v]) {
        if (hidden(to)) continue;
        if (base_[v] == base_[to] || match_[v] == to) continue;
        if (to == root || (match_[to] != -1 && parent_[match_[to]] != -1)) {
          int cur = lca(v, to);
          blossom_.assign(n_, 0);
          mark_path(v, cur, to);
          mark_path(to, cur, v);
          for (int i = 0; i < n_; ++i) {
            if (!blossom_[base_[i]]) continue;
            base_[i] = cur;
            if (!used_[i]) {
              used_[i] = 1;
              q.push(i);
            }
          }
        } else if (parent_[to] == -1) {
          parent_[to] = v;
          if (match_[to] == -1) {
            for (int u = to; u != -1;) {
              int pv = parent_[u], ppv = match_[pv];
              match_[u] = pv;
              match_[pv] = u;
              u = ppv;
            }
            return true;
          }
          used_[match_[to]] = 1;
          q.push(match_[to]);
        }
      }
    }
    return false;
  }

 private:
  bool hidden(int v) const { return removed_ && (*removed_)[v]; }

  int lca(int a, int b) {
    std::vector<char> seen(n_, 0);
    for (;;) {
      a = base_[a];
      seen[a] = 1;
      if (match_[a] == -1) break;
      a = parent_[match_[a]];
    }
    for (;;) {
      b = base_[b];
      if (seen[b]) return b;
      b = parent_[match_[b]];
    }
  }

  void mark_path(int v, int b, int child) {
    while (base_[v] != b) {
      blossom_[base_[v]] = blossom_[base_[match_[v]]] = 1;
      parent_[v] = child;
      child = match_[v];
      v = parent_[match_[v]];
    }
  }

  const std::vector<std::vector<int>>& g_;
  std::vector<int>& match_;
  const std::vector<char>* removed_;
  int n_;
  std::vector<char> used_, blossom_;
  std::vector<int> parent_, base_;
};

int smallest_valence_at_least(int z, int charge, int total) {
  for (int v : allowed_valences(z, charge))
    if (v >= total) return v;
  return -1;
}

}  // namespace

int implicit_hydrogens(int z, int charge, bool aromatic, int bond_sum,
                       bool& need_double) {
  need_double = false;
  if (allowed_valences(z, charge).empty()) return 0;
  int v = smallest_valence_at_least(z, charge, bond_sum);
  if (v < 0) return -1;
  int free = v - bond_sum;
  if (aromatic && free >= 1) {
    need_double = true;
    return free - 1;
  }
  return free;
}

bool check_bracket_atom(int z, int charge, bool aromatic, int bond_sum, int h,
                        bool& need_double) {
  need_double = false;
  if (allowed_valences(z, charge).empty()) return true;
  int v = smallest_valence_at_least(z, charge, bond_sum + h);
  if (v < 0) return false;
  need_double = aromatic && v - bond_sum - h >= 1;
  return true;
}

bool kekulize(MolGraph& mol, const std::vector<bool>& pending,
              const std::vector<bool>& need) {
  int n = mol.n_atoms();
  std::vector<std::vector<int>> g(n);
  for (int i = 0; i < mol.n_bonds(); ++i) {
    if (!pending[i]) continue;
    const Bond& b = mol.bond(i);
    if (need[b.a] && need[b.b]) {
      g[b.a].push_back(b.b);
      g[b.b].push_back(b.a);
    }
  }
  std::vector<int> match(n, -1);
  // Greedy start from the most constrained atoms keeps augmentations rare.
  std::vector<int> order;
  for (int i = 0; i < n; ++i)
    if (need[i]) order.push_back(i);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return g[a].size() < g[b].size(); });
  for (int v : order) {
    if (match[v] != -1) continue;
    for (int to : g[v])
      if (match[to] == -1) {
        match[v] = to;
        match[to] = v;
        break;
      }
  }
  Blossom bl(g, match);
  for (int v : order)
    if (match[v] == -1 && !bl.augment(v)) return false;
  for (int i = 0; i < mol.n_bonds(); ++i) {
    if (!pending[i]) continue;
    Bond& b = mol.bond(i);
    b.order = (match[b.a] == b.b) ? 2 : 1;
  }
  return true;
}

std::vector<bool> flexible_bonds(const MolGraph& mol) {
  int n = mol.n_atoms();
  std::vector<bool> flex(mol.n_bonds(), false);
  std::vector<int> n_double(n, 0), mate(n, -1);
  for (const Bond& b : mol.bonds())
    if (b.order == 2) {
      ++n_double[b.a];
      ++n_double[b.b];
      mate[b.a] = b.b;
      mate[b.b] = b.a;
    }
  std::vector<char> in_pi(n, 0);
  bool any = false;
  for (int i = 0; i < n; ++i)
    if (n_double[i] == 1 && n_double[mate[i]] == 1) in_pi[i] = 1, any = true;
  if (!any) return flex;

  std::vector<std::vector<int>> g(n);
  std::vector<int> single_edges;
  for (int i = 0; i < mol.n_bonds(); ++i) {
    const Bond& b = mol.bond(i);
    if (!in_pi[b.a] || !in_pi[b.b] || b.order > 2) continue;
    g[b.a].push_back(b.b);
    g[b.b].push_back(b.a);
    if (b.order == 1) single_edges.push_back(i);
  }
  if (single_edges.empty()) return flex;

  std::vector<int> color(n, -1);
  bool bipartite = true;
  for (int s = 0; s < n && bipartite; ++s) {
    if (!in_pi[s] || color[s] >= 0) continue;
    color[s] = 0;
    std::vector<int> stack{s};
    while (!stack.empty() && bipartite) {
      int v = stack.back();
      stack.pop_back();
      for (int to : g[v]) {
        if (color[to] < 0) {
          color[to] = color[v] ^ 1;
          stack.push_back(to);
        } else if (color[to] == color[v]) {
          bipartite = false;
          break;
        }
      }
    }
  }

  std::vector<char> flex_atom(n, 0);
  if (bipartite) {
    // Unmatched edges point from colour 0 to colour 1, matched edges back.
    // An edge lies on an alternating cycle iff both ends share an SCC.
    std::vector<std::vector<int>> dg(n);
    for (int v = 0; v < n; ++v) {
      if (!in_pi[v]) continue;
      for (int to : g[v]) {
        bool matched = mate[v] == to;
        if ((color[v] == 0) != matched) dg[v].push_back(to);
      }
    }
    std::vector<int> index(n, -1), low(n, 0), scc(n, -1), st;
    std::vector<char> on(n, 0);
    int counter = 0, n_scc = 0;
    std::function<void(int)> dfs = [&](int v) {
      index[v] = low[v] = counter++;
      st.push_back(v);
      on[v] = 1;
      for (int to : dg[v]) {
        if (index[to] < 0) {
          dfs(to);
          low[v] = std::min(low[v], low[to]);
        } else if (on[to]) {
          low[v] = std::min(low[v], index[to]);
        }
      }
      if (low[v] == index[v]) {
        for (;;) {
          int w = st.back();
          st.pop_back();
          on[w] = 0;
          scc[w] = n_scc;
          if (w == v) break;
        }
        ++n_scc;
      }
    };
    for (int v = 0; v < n; ++v)
      if (in_pi[v] && index[v] < 0) dfs(v);
    for (int e : single_edges) {
      const Bond& b = mol.bond(e);
      if (scc[b.a] == scc[b.b]) {
        flex[e] = true;
        flex_atom[b.a] = flex_atom[b.b] = 1;
      }
    }
  } else {
    // Edge (u,v) is in some perfect matching iff the graph without u and v
    // still has one, i.e. their mates can be joined by an augmenting path.
    std::vector<char> removed(n, 0);
    for (int i = 0; i < n; ++i) removed[i] = !in_pi[i];
    for (int e : single_edges) {
      const Bond& b = mol.bond(e);
      std::vector<int> match(n, -1);
      for (int v = 0; v < n; ++v)
        if (in_pi[v]) match[v] = mate[v];
      int mu = mate[b.a], mv = mate[b.b];
      match[mu] = match[mv] = -1;
      match[b.a] = match[b.b] = -1;
      removed[b.a] = removed[b.b] = 1;
      Blossom bl(g, match, &removed);
      if (bl.augment(mu)) {
        flex[e] = true;
        flex_atom[b.a] = flex_atom[b.b] = 1;
      }
      removed[b.a] = removed[b.b] = 0;
    }
  }
  for (int i = 0; i < mol.n_bonds(); ++i) {
    const Bond& b = mol.bond(i);
    if (b.order == 2 && in_pi[b.a] && flex_atom[b.a]) flex[i] = true;
  }
  return flex;
}

void perceive_resonance(MolGraph& mol) {
  auto flex = flexible_bonds(mol);
  for (int i = 0; i < mol.n_atoms(); ++i) mol.atom(i).aromatic = false;
  for (int i = 0; i < mol.n_bonds(); ++i) {
    Bond& b = mol.bond(i);
    b.aromatic = flex[i];
    if (flex[i]) mol.atom(b.a).aromatic = mol.atom(b.b).aromatic = true;
  }
}

bool complete_fragment(MolGraph& frag) {
  int n = frag.n_atoms();
  std::vector<bool> pending(frag.n_bonds(), false), need(n, false);
  for (int i = 0; i < frag.n_bonds(); ++i) pending[i] = frag.bond(i).aromatic;
  for (int i = 0; i < n; ++i) {
    Atom& a = frag.atom(i);
    int sum = 0;
    bool has_aromatic_bond = false;
    for (const auto& nb : frag.neighbors(i)) {
      const Bond& b = frag.bond(nb.bond);
      sum += b.aromatic ? 1 : b.order;
      has_aromatic_bond |= b.aromatic;
    }
    if (a.aromatic && !has_aromatic_bond) return false;
    bool nd = false;
    int h = implicit_hydrogens(a.z, a.charge, a.aromatic, sum, nd);
    if (h < 0) return false;
    a.hydrogens = h;
    need[i] = nd;
  }
  std::vector<Bond> before = frag.bonds();
  std::vector<Atom> atoms_before = frag.atoms();
  if (!kekulize(frag, pending, need)) return false;
  perceive_resonance(frag);
  for (int i = 0; i < frag.n_bonds(); ++i)
    if (frag.bond(i).aromatic != before[i].aromatic) return false;
  for (int i = 0; i < n; ++i)
    if (frag.atom(i).aromatic != atoms_before[i].aromatic) return false;
  return true;
}

}  // namespace rel::chem
