#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <string>

#include "rel/chem/element.hpp"
#include "rel/chem/kekulize.hpp"
#include "rel/chem/smiles.hpp"

namespace rel::chem {
namespace {

std::string atom_text(const MolGraph& mol, int i, bool arom) {
  const Atom& a = mol.atom(i);
  bool lower = arom && a.aromatic;
  std::string sym(element_symbol(a.z));
  if (lower) sym[0] = static_cast<char>(std::tolower(sym[0]));
  if (a.charge == 0 && is_organic_subset(a.z)) {
    int sum = 0;
    for (const auto& nb : mol.neighbors(i)) {
      const Bond& b = mol.bond(nb.bond);
      sum += (arom && b.aromatic) ? 1 : b.order;
    }
    bool need = false;
    int h = implicit_hydrogens(a.z, 0, lower, sum, need);
    if (h == a.hydrogens && need == lower) return sym;
  }
  std::string out = "[" + sym;
  if (a.hydrogens > 0) {
    out += 'H';
    if (a.hydrogens > 1) out += std::to_string(a.hydrogens);
  }
  if (a.charge != 0) {
    out += a.charge > 0 ? '+' : '-';
    if (std::abs(a.charge) > 1) out += std::to_string(std::abs(a.charge));
  }
  return out + "]";
}

std::string bond_text(const MolGraph& mol, int bi, bool arom) {
  const Bond& b = mol.bond(bi);
  if (arom && b.aromatic) return "";
  switch (b.order) {
    case 2: return "=";
    case 3: return "#";
    default:
      return (arom && mol.atom(b.a).aromatic && mol.atom(b.b).aromatic) ? "-" : "";
  }
}

class Writer {
 public:
  Writer(const MolGraph& mol, const std::vector<int>& rank, bool arom)
      : mol_(mol), rank_(rank), arom_(arom), n_(mol.n_atoms()) {}

  std::string run() {
    pre_.assign(n_, -1);
    children_.assign(n_, {});
    ring_bond_.assign(mol_.n_bonds(), 0);
    std::vector<int> starts(n_);
    std::iota(starts.begin(), starts.end(), 0);
    std::sort(starts.begin(), starts.end(),
              [&](int a, int b) { return rank_[a] < rank_[b]; });
    std::string out;
    for (int s : starts) {
      if (pre_[s] >= 0) continue;
      discover(s, -1);
      if (!out.empty()) out += '.';
      emit(s, out);
    }
    return out;
  }

 private:
  std::vector<Neighbor> sorted_neighbors(int v) const {
    auto nbs = mol_.neighbors(v);
    std::sort(nbs.begin(), nbs.end(), [&](const Neighbor& x, const Neighbor& y) {
      return rank_[x.atom] < rank_[y.atom];
    });
    return nbs;
  }

  void discover(int v, int parent_bond) {
    pre_[v] = counter_++;
    for (const auto& nb : sorted_neighbors(v)) {
      if (nb.bond == parent_bond) continue;
      if (pre_[nb.atom] < 0) {
        children_[v].push_back(nb);
        discover(nb.atom, nb.bond);
      } else {
        ring_bond_[nb.bond] = 1;
      }
    }
  }

  int take_digit() {
    for (int d = 1;; ++d)
      if (std::find(used_.begin(), used_.end(), d) == used_.end()) {
        used_.push_back(d);
        return d;
      }
  }

  static std::string digit_text(int d) {
    return d < 10 ? std::to_string(d) : "%" + std::to_string(d);
  }

  void emit(int v, std::string& out) {
    out += atom_text(mol_, v, arom_);
    std::vector<Neighbor> rings;
    for (const auto& nb : mol_.neighbors(v))
      if (ring_bond_[nb.bond]) rings.push_back(nb);
    std::sort(rings.begin(), rings.end(), [&](const Neighbor& x, const Neighbor& y) {
      return pre_[x.atom] < pre_[y.atom];
    });
    // Digits closed here are freed only after this atom's openings, so no
    // atom reads like "C11".
    std::vector<int> closed;
    for (const auto& nb : rings) {
      if (pre_[nb.atom] < pre_[v]) {
        int d = digit_of_bond_.at(nb.bond);
        closed.push_back(d);
        out += digit_text(d);
      }
    }
    for (const auto& nb : rings) {
      if (pre_[nb.atom] > pre_[v]) {
        int d = take_digit();
        digit_of_bond_[nb.bond] = d;
        out += bond_text(mol_, nb.bond, arom_) + digit_text(d);
      }
    }
    for (int d : closed) used_.erase(std::find(used_.begin(), used_.end(), d));
    const auto& kids = children_[v];
    for (std::size_t k = 0; k < kids.size(); ++k) {
      bool branch = k + 1 < kids.size();
      if (branch) out += '(';
      out += bond_text(mol_, kids[k].bond, arom_);
      emit(kids[k].atom, out);
      if (branch) out += ')';
    }
  }

  const MolGraph& mol_;
  const std::vector<int>& rank_;
  bool arom_;
  int n_;
  int counter_ = 0;
  std::vector<int> pre_;
  std::vector<std::vector<Neighbor>> children_;
  std::vector<char> ring_bond_;
  std::vector<int> used_;
  std::map<int, int> digit_of_bond_;
};

}  // namespace

std::string write_smiles(const MolGraph& mol, const std::vector<int>& rank,
                         bool aromatic_notation) {
  return Writer(mol, rank, aromatic_notation).run();
}

std::string write_smiles(const MolGraph& mol) {
  std::vector<int> rank(mol.n_atoms());
  std::iota(rank.begin(), rank.end(), 0);
  return write_smiles(mol, rank, true);
}

}  // namespace rel::chem
