#pragma once

#include <vector>

#include "rel/chem/molgraph.hpp"

namespace rel::chem {

// Implicit H of an unbracketed atom whose bonds sum to `bond_sum`, with
// aromatic bonds counted as 1. An aromatic atom with spare valence reserves
// one unit for its double bond and reports need_double. Returns -1 if the
// sum exceeds every allowed valence.
int implicit_hydrogens(int z, int charge, bool aromatic, int bond_sum,
                       bool& need_double);

// Same for a bracket atom carrying `h` explicit hydrogens. Returns false on
// a valence violation; unknown elements always pass.
bool check_bracket_atom(int z, int charge, bool aromatic, int bond_sum, int h,
                        bool& need_double);

// Gives every atom with need[i] exactly one double bond among the bonds
// flagged in `pending`; other pending bonds become single. Returns false if
// no perfect matching exists.
bool kekulize(MolGraph& mol, const std::vector<bool>& pending,
              const std::vector<bool>& need);

// Bonds lying on an alternating cycle of the double-bond matching, i.e.
// bonds whose order differs between Kekulé structures.
std::vector<bool> flexible_bonds(const MolGraph& mol);

// Replaces aromatic flags by flexible_bonds() and marks their atoms.
void perceive_resonance(MolGraph& mol);

// For a subgraph cut out of a perceived molecule: refills H by the implicit
// rule, re-kekulizes the aromatic bonds and checks that the aromatic flags
// survive. Returns false if the fragment is not writable as such.
bool complete_fragment(MolGraph& frag);

}  // namespace rel::chem
