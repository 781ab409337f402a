#include "rel/chem/molgraph.hpp"

#include <string>

#include "rel/core/error.hpp"

namespace rel::chem {

int MolGraph::add_atom(const Atom& a) {
  atoms_.push_back(a);
  adj_.emplace_back();
  return n_atoms() - 1;
}

int MolGraph::add_bond(int a, int b, int order, bool aromatic) {
  if (a == b)
    throw ParseError("bond from atom " + std::to_string(a) + " to itself");
  if (bond_between(a, b) >= 0)
    throw ParseError("duplicate bond between atoms " + std::to_string(a) +
                     " and " + std::to_string(b));
  int idx = n_bonds();
  bonds_.push_back({a, b, order, aromatic});
  adj_[a].push_back({b, idx});
  adj_[b].push_back({a, idx});
  return idx;
}

int MolGraph::bond_between(int i, int j) const {
  const auto& row = adj_[i].size() <= adj_[j].size() ? adj_[i] : adj_[j];
  int other = adj_[i].size() <= adj_[j].size() ? j : i;
  for (const auto& nb : row)
    if (nb.atom == other) return nb.bond;
  return -1;
}

int MolGraph::bond_order_sum(int i) const {
  int s = 0;
  for (const auto& nb : adj_[i]) s += bonds_[nb.bond].order;
  return s;
}

int MolGraph::total_hydrogens() const {
  int h = 0;
  for (const auto& a : atoms_) h += a.hydrogens;
  return h;
}

int MolGraph::components(std::vector<int>& comp) const {
  comp.assign(atoms_.size(), -1);
  int n = 0;
  std::vector<int> stack;
  for (int s = 0; s < n_atoms(); ++s) {
    if (comp[s] >= 0) continue;
    comp[s] = n;
    stack.push_back(s);
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (const auto& nb : adj_[v])
        if (comp[nb.atom] < 0) {
          comp[nb.atom] = n;
          stack.push_back(nb.atom);
        }
    }
    ++n;
  }
  return n;
}

bool MolGraph::is_connected() const {
  std::vector<int> comp;
  return components(comp) <= 1;
}

MolGraph MolGraph::permuted(const std::vector<int>& perm) const {
  MolGraph out;
  out.atoms_.resize(atoms_.size());
  out.adj_.resize(atoms_.size());
  for (int i = 0; i < n_atoms(); ++i) out.atoms_[perm[i]] = atoms_[i];
  for (const auto& b : bonds_)
    out.add_bond(perm[b.a], perm[b.b], b.order, b.aromatic);
  return out;
}

MolGraph MolGraph::induced(const std::vector<int>& atoms) const {
  MolGraph out;
  std::vector<int> map(atoms_.size(), -1);
  for (int a : atoms) map[a] = out.add_atom(atoms_[a]);
  for (const auto& b : bonds_)
    if (map[b.a] >= 0 && map[b.b] >= 0)
      out.add_bond(map[b.a], map[b.b], b.order, b.aromatic);
  return out;
}

}  // namespace rel::chem
