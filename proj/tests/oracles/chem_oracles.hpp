#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "rel/chem/molgraph.hpp"

namespace oracle {

// Backtracking matcher. Atoms match on element and aromatic flag (plus
// charge when the pattern atom is charged, or always with exact_charge);
// bonds match on aromatic flag, and on order when not aromatic.
// Monomorphism: every pattern bond maps to a target bond.
bool monomorphic(const rel::chem::MolGraph& pattern, const rel::chem::MolGraph& target,
                 bool exact_charge = false);

// Full isomorphism including H counts and charges.
bool isomorphic(const rel::chem::MolGraph& a, const rel::chem::MolGraph& b);

struct OracleIsomers {
  std::size_t labelled = 0;  // labelled adjacency matrices visited
  std::vector<rel::chem::MolGraph> representatives;  // one per class
};

// Every connected molecule with the given heavy-atom counts (z -> count)
// and hydrogen count, valences C4 N3 O2 S2 halogen 1. Structures that
// differ only by moving double bonds around an alternating cycle are one
// class; those bonds are flagged aromatic in the representative.
OracleIsomers brute_force_isomers(const std::map<int, int>& heavy, int hydrogens);

struct OracleMcs {
  int n_atoms = 0;
  int n_bonds = 0;
};

// Bond subsets of the smallest molecule that a result may take (e.g. ones
// that can be written as a molecule on their own). Empty accepts all.
using BondFilter =
    std::function<bool(const rel::chem::MolGraph&, const std::vector<int>&)>;

// Largest connected bond subset of the smallest molecule that embeds in
// all of them, by bond count then atom count. Exhaustive over subsets.
OracleMcs exhaustive_mcs(const std::vector<rel::chem::MolGraph>& mols,
                         const BondFilter& admissible = {});

}  // namespace oracle
