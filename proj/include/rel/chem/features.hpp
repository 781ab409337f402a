#pragma once

#include <bitset>
#include <string>
#include <string_view>

#include "rel/chem/molgraph.hpp"

namespace rel::chem {

enum class FgKind { kCarboxylicAcid, kAromaticRing, kAlcohol, kPrimaryAmine, kKetone };

std::string_view to_string(FgKind k);          // "carboxylic_acid"
std::string_view prompt_name(FgKind k);        // "total_carboxylic_acids"
FgKind parse_fg_kind(std::string_view s);      // accepts either form

// carboxylic_acid: C(=O)OH. ketone: C=O carbon with exactly two carbon
// neighbours. alcohol: OH on a carbon without multiple bonds. primary_amine:
// neutral NH2 on carbon. aromatic_ring: Hückel rings of the SSSR.
int count_fg(const MolGraph& mol, FgKind kind);

constexpr int kFingerprintBits = 2048;
using Fingerprint = std::bitset<kFingerprintBits>;

// Hashed linear paths of 0..max_bonds bonds.
Fingerprint path_fingerprint(const MolGraph& mol, int max_bonds = 7);
double tanimoto(const Fingerprint& a, const Fingerprint& b);

}  // namespace rel::chem
