#include "rel/chem/rings.hpp"

#include <algorithm>
#include <cstdint>
#include <queue>

namespace rel::chem {
namespace {

using Bits = std::vector<std::uint64_t>;

void set_bit(Bits& b, int i) { b[i / 64] |= std::uint64_t{1} << (i % 64); }
bool get_bit(const Bits& b, int i) { return (b[i / 64] >> (i % 64)) & 1; }

struct Candidate {
  int length;
  Bits edges;
};

std::vector<int> walk_cycle(const MolGraph& mol, const Bits& edges) {
  int start = -1;
  for (int i = 0; i < mol.n_bonds() && start < 0; ++i)
    if (get_bit(edges, i)) start = mol.bond(i).a;
  std::vector<int> cycle{start};
  int prev_bond = -1, cur = start;
  for (;;) {
    int next_bond = -1;
    for (const auto& nb : mol.neighbors(cur))
      if (nb.bond != prev_bond && get_bit(edges, nb.bond)) {
        next_bond = nb.bond;
        break;
      }
    int nxt = mol.bond(next_bond).other(cur);
    if (nxt == start) break;
    cycle.push_back(nxt);
    prev_bond = next_bond;
    cur = nxt;
  }
  return cycle;
}

}  // namespace

std::vector<std::vector<int>> sssr(const MolGraph& mol) {
  int n = mol.n_atoms(), m = mol.n_bonds();
  std::vector<int> comp;
  int rank_needed = m - n + mol.components(comp);
  if (rank_needed <= 0) return {};
  int words = (m + 63) / 64;

  std::vector<Candidate> cands;
  std::vector<int> dist(n), pbond(n);
  for (int x = 0; x < n; ++x) {
    std::fill(dist.begin(), dist.end(), -1);
    std::fill(pbond.begin(), pbond.end(), -1);
    dist[x] = 0;
    std::queue<int> q;
    q.push(x);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (const auto& nb : mol.neighbors(v))
        if (dist[nb.atom] < 0) {
          dist[nb.atom] = dist[v] + 1;
          pbond[nb.atom] = nb.bond;
          q.push(nb.atom);
        }
    }
    for (int e = 0; e < m; ++e) {
      const Bond& b = mol.bond(e);
      if (dist[b.a] < 0 || pbond[b.a] == e || pbond[b.b] == e) continue;
      Bits bits(words, 0);
      std::vector<int> seen_atoms;
      bool simple = true;
      std::vector<char> on_path(n, 0);
      for (int v : {b.a, b.b}) {
        for (int u = v; u != x; u = mol.bond(pbond[u]).other(u)) {
          if (on_path[u]) {
            simple = false;
            break;
          }
          on_path[u] = 1;
          set_bit(bits, pbond[u]);
        }
        if (!simple) break;
      }
      if (!simple) continue;
      set_bit(bits, e);
      cands.push_back({dist[b.a] + dist[b.b] + 1, std::move(bits)});
    }
  }
  std::stable_sort(cands.begin(), cands.end(),
                   [](const Candidate& a, const Candidate& b) {
                     return a.length < b.length;
                   });

  // Greedy GF(2) independence test against a reduced basis.
  std::vector<Bits> basis;
  std::vector<int> pivots;
  std::vector<std::vector<int>> rings;
  for (const auto& c : cands) {
    Bits v = c.edges;
    for (std::size_t k = 0; k < basis.size(); ++k)
      if (get_bit(v, pivots[k]))
        for (int w = 0; w < words; ++w) v[w] ^= basis[k][w];
    int pivot = -1;
    for (int i = 0; i < m && pivot < 0; ++i)
      if (get_bit(v, i)) pivot = i;
    if (pivot < 0) continue;
    for (std::size_t k = 0; k < basis.size(); ++k)
      if (get_bit(basis[k], pivot))
        for (int w = 0; w < words; ++w) basis[k][w] ^= v[w];
    basis.push_back(v);
    pivots.push_back(pivot);
    rings.push_back(walk_cycle(mol, c.edges));
    if (static_cast<int>(rings.size()) == rank_needed) break;
  }
  return rings;
}

bool is_huckel_ring(const MolGraph& mol, const std::vector<int>& ring) {
  std::vector<char> in_ring(mol.n_atoms(), 0);
  for (int a : ring) in_ring[a] = 1;
  int electrons = 0;
  for (int a : ring) {
    const Atom& at = mol.atom(a);
    bool ring_double = false, other_double = false, triple = false;
    int other_double_z = 0;
    for (const auto& nb : mol.neighbors(a)) {
      const Bond& b = mol.bond(nb.bond);
      if (b.order == 3) triple = true;
      if (b.order != 2) continue;
      if (in_ring[nb.atom]) ring_double = true;
      else {
        other_double = true;
        other_double_z = mol.atom(nb.atom).z;
      }
    }
    if (triple) return false;
    if (ring_double || (other_double && at.aromatic)) {
      electrons += 1;
    } else if (other_double) {
      if (other_double_z != 8 && other_double_z != 7 && other_double_z != 16)
        return false;
    } else {
      int connections = mol.degree(a) + at.hydrogens;
      bool lone_pair =
          (at.charge == 0 && ((at.z == 7 && connections == 3) ||
                              ((at.z == 8 || at.z == 16) && connections == 2))) ||
          (at.z == 6 && at.charge == -1);
      if (at.z == 6 && at.charge == 1) continue;
      if (!lone_pair) return false;
      electrons += 2;
    }
  }
  return electrons % 4 == 2;
}

int count_aromatic_rings(const MolGraph& mol) {
  int n = 0;
  for (const auto& r : sssr(mol))
    if (is_huckel_ring(mol, r)) ++n;
  return n;
}

}  // namespace rel::chem
