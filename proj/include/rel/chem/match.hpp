#pragma once

#include <atomic>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rel/chem/molgraph.hpp"

namespace rel::chem {

// Pattern atoms match target atoms of the same element and aromatic flag; a
// charged pattern atom also needs the same charge. Bonds match on order,
// or on both being aromatic. H counts are ignored.
bool atoms_compatible(const Atom& pattern, const Atom& target);

// Injective, non-induced embedding of `pattern` into `target` (pattern atom
// i maps to result[i]), or nullopt.
std::optional<std::vector<int>> find_embedding(const MolGraph& pattern,
                                               const MolGraph& target);
// Variant requiring equal charges on every atom pair.
std::optional<std::vector<int>> find_embedding(const MolGraph& pattern,
                                               const MolGraph& target,
                                               bool exact_charge);
bool is_subgraph(const MolGraph& pattern, const MolGraph& target);

// 1/2 * ([pred in truth] + [truth in pred]); 0 if pred does not parse.
double substructure_score(const MolGraph& pred, const MolGraph& truth);
double substructure_score(std::string_view pred, std::string_view truth);

// Subgraph of `mol` formed by `bonds` (and their atoms) with H refilled by
// the implicit-H rule. nullopt if its aromatic part cannot stand alone.
std::optional<MolGraph> bond_fragment(const MolGraph& mol,
                                      const std::vector<int>& bonds);

struct McsOptions {
  int min_atoms = 8;
  double time_budget_s = 30.0;
  const std::atomic<bool>* cancel = nullptr;
};

struct McsResult {
  std::optional<MolGraph> mol;  // unset when below min_atoms or empty
  std::string smiles;           // canonical
  int n_atoms = 0;
  int n_bonds = 0;
  bool exact = true;  // false if the budget ran out first
};

// Largest connected common substructure of every molecule: most bonds, then
// most atoms. Grows bond sets of the smallest molecule and keeps only those
// that embed in all others.
McsResult mcs_of_set(const std::vector<MolGraph>& mols, const McsOptions& opts = {});

}  // namespace rel::chem
