#pragma once

#include <cstddef>
#include <vector>

namespace rel::chem {

struct Atom {
  int z = 6;
  int charge = 0;
  int hydrogens = 0;  // total attached H, explicit or valence-derived
  bool aromatic = false;
  bool operator==(const Atom&) const = default;
};

// `order` is always a Kekulé order in 1..3. `aromatic` marks bonds whose
// order differs between the molecule's Kekulé structures.
struct Bond {
  int a = 0;
  int b = 0;
  int order = 1;
  bool aromatic = false;
  int other(int i) const noexcept { return a == i ? b : a; }
  bool operator==(const Bond&) const = default;
};

// Label used when comparing bonds across molecules.
inline int bond_class(const Bond& b) noexcept { return b.aromatic ? 4 : b.order; }

struct Neighbor {
  int atom;
  int bond;
};

class MolGraph {
 public:
  int add_atom(const Atom& a);
  // Throws ParseError on self loops and duplicate bonds.
  int add_bond(int a, int b, int order, bool aromatic = false);

  int n_atoms() const noexcept { return static_cast<int>(atoms_.size()); }
  int n_bonds() const noexcept { return static_cast<int>(bonds_.size()); }

  const Atom& atom(int i) const { return atoms_[i]; }
  Atom& atom(int i) { return atoms_[i]; }
  const Bond& bond(int i) const { return bonds_[i]; }
  Bond& bond(int i) { return bonds_[i]; }
  const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  const std::vector<Bond>& bonds() const noexcept { return bonds_; }
  const std::vector<Neighbor>& neighbors(int i) const { return adj_[i]; }

  int degree(int i) const { return static_cast<int>(adj_[i].size()); }
  int bond_between(int i, int j) const;
  int bond_order_sum(int i) const;
  int total_hydrogens() const;

  // Component index per atom; returns the number of components.
  int components(std::vector<int>& comp) const;
  bool is_connected() const;

  // Atom i of this graph becomes atom perm[i] of the result.
  MolGraph permuted(const std::vector<int>& perm) const;

  // Subgraph on `atoms` (in that order) with every bond among them.
  MolGraph induced(const std::vector<int>& atoms) const;

  bool operator==(const MolGraph& o) const {
    return atoms_ == o.atoms_ && bonds_ == o.bonds_;
  }

 private:
  std::vector<Atom> atoms_;
  std::vector<Bond> bonds_;
  std::vector<std::vector<Neighbor>> adj_;
};

}  // namespace rel::chem
