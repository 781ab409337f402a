#include <algorithm>

#include "rel/chem/kekulize.hpp"
#include "rel/chem/match.hpp"
#include "rel/chem/smiles.hpp"

namespace rel::chem {
namespace {

bool bonds_compatible(const Bond& p, const Bond& t) {
  return p.aromatic == t.aromatic && (p.aromatic || p.order == t.order);
}

class Matcher {
 public:
  Matcher(const MolGraph& p, const MolGraph& t, bool exact_charge)
      : p_(p), t_(t), exact_charge_(exact_charge), map_(p.n_atoms(), -1),
        used_(t.n_atoms(), 0) {}

  std::optional<std::vector<int>> run() {
    if (p_.n_atoms() > t_.n_atoms() || p_.n_bonds() > t_.n_bonds())
      return std::nullopt;
    plan();
    if (place(0)) return map_;
    return std::nullopt;
  }

 private:
  // BFS order from the most constrained atom of each component; parent_[k]
  // is an already placed neighbour of order_[k], or -1 for a new component.
  void plan() {
    int n = p_.n_atoms();
    std::vector<char> seen(n, 0);
    for (;;) {
      int root = -1;
      for (int i = 0; i < n; ++i) {
        if (seen[i]) continue;
        if (root < 0 || p_.degree(i) > p_.degree(root) ||
            (p_.degree(i) == p_.degree(root) && p_.atom(i).z > p_.atom(root).z))
          root = i;
      }
      if (root < 0) break;
      seen[root] = 1;
      std::size_t head = order_.size();
      order_.push_back(root);
      parent_.push_back(-1);
      while (head < order_.size()) {
        int v = order_[head++];
        for (const auto& nb : p_.neighbors(v))
          if (!seen[nb.atom]) {
            seen[nb.atom] = 1;
            order_.push_back(nb.atom);
            parent_.push_back(v);
          }
      }
    }
  }

  bool feasible(int pv, int tv) const {
    if (used_[tv] || !atoms_compatible(p_.atom(pv), t_.atom(tv))) return false;
    if (exact_charge_ && p_.atom(pv).charge != t_.atom(tv).charge) return false;
    if (t_.degree(tv) < p_.degree(pv)) return false;
    for (const auto& nb : p_.neighbors(pv)) {
      int tm = map_[nb.atom];
      if (tm < 0) continue;
      int tb = t_.bond_between(tv, tm);
      if (tb < 0 || !bonds_compatible(p_.bond(nb.bond), t_.bond(tb))) return false;
    }
    return true;
  }

  bool place(std::size_t k) {
    if (k == order_.size()) return true;
    int pv = order_[k];
    auto attempt = [&](int tv) {
      if (!feasible(pv, tv)) return false;
      map_[pv] = tv;
      used_[tv] = 1;
      if (place(k + 1)) return true;
      map_[pv] = -1;
      used_[tv] = 0;
      return false;
    };
    if (parent_[k] >= 0) {
      for (const auto& nb : t_.neighbors(map_[parent_[k]]))
        if (attempt(nb.atom)) return true;
    } else {
      for (int tv = 0; tv < t_.n_atoms(); ++tv)
        if (attempt(tv)) return true;
    }
    return false;
  }

  const MolGraph& p_;
  const MolGraph& t_;
  bool exact_charge_;
  std::vector<int> order_, parent_, map_;
  std::vector<char> used_;
};

}  // namespace

bool atoms_compatible(const Atom& p, const Atom& t) {
  return p.z == t.z && p.aromatic == t.aromatic &&
         (p.charge == 0 || p.charge == t.charge);
}

std::optional<std::vector<int>> find_embedding(const MolGraph& pattern,
                                               const MolGraph& target) {
  return Matcher(pattern, target, false).run();
}

std::optional<std::vector<int>> find_embedding(const MolGraph& pattern,
                                               const MolGraph& target,
                                               bool exact_charge) {
  return Matcher(pattern, target, exact_charge).run();
}

bool is_subgraph(const MolGraph& pattern, const MolGraph& target) {
  return find_embedding(pattern, target).has_value();
}

double substructure_score(const MolGraph& pred, const MolGraph& truth) {
  return 0.5 * (is_subgraph(pred, truth) ? 1 : 0) +
         0.5 * (is_subgraph(truth, pred) ? 1 : 0);
}

double substructure_score(std::string_view pred, std::string_view truth) {
  auto p = try_parse_smiles(pred);
  if (!p) return 0.0;
  return substructure_score(*p, parse_smiles(truth));
}

std::optional<MolGraph> bond_fragment(const MolGraph& mol,
                                      const std::vector<int>& bonds) {
  MolGraph frag;
  std::vector<int> map(mol.n_atoms(), -1);
  auto atom_of = [&](int a) {
    if (map[a] < 0) {
      Atom at = mol.atom(a);
      at.hydrogens = 0;
      map[a] = frag.add_atom(at);
    }
    return map[a];
  };
  for (int bi : bonds) {
    const Bond& b = mol.bond(bi);
    int x = atom_of(b.a), y = atom_of(b.b);
    frag.add_bond(x, y, b.order, b.aromatic);
  }
  if (!complete_fragment(frag)) return std::nullopt;
  return frag;
}

}  // namespace rel::chem
