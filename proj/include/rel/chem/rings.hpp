#pragma once

#include <vector>

#include "rel/chem/molgraph.hpp"

namespace rel::chem {

// Smallest set of smallest rings: a minimum-weight cycle basis picked from
// Horton candidates. Each ring lists its atoms in cyclic order.
std::vector<std::vector<int>> sssr(const MolGraph& mol);

// Hückel 4n+2 count over one ring of a Kekulé structure. Atoms with a
// double bond in the ring or on an aromatic bond give 1 electron, neutral
// N/O/S with a lone pair and no double bond give 2, a carbonyl-type ring
// carbon gives 0; any other atom disqualifies the ring.
bool is_huckel_ring(const MolGraph& mol, const std::vector<int>& ring);

int count_aromatic_rings(const MolGraph& mol);

}  // namespace rel::chem
