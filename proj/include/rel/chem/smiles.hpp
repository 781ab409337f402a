#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rel/chem/molgraph.hpp"

namespace rel::chem {

// Organic-subset and bracket atoms, ring closures (digits and %nn),
// branches, bonds - = # : and '.'. Stereo marks (@, /, \) are accepted and
// dropped. Aromatic input is kekulized and aromatic flags are then
// re-derived from the Kekulé structures, so "c1ccccc1" and "C1=CC=CC=C1"
// give identical graphs. Explicit [H] atoms are folded into their
// neighbour's count. Throws ParseError.
MolGraph parse_smiles(std::string_view text);
std::optional<MolGraph> try_parse_smiles(std::string_view text) noexcept;

// Writes atoms in the given priority (lower first); aromatic bonds between
// lowercase atoms are implicit.
std::string write_smiles(const MolGraph& mol, const std::vector<int>& rank,
                         bool aromatic_notation = true);
// Input atom order.
std::string write_smiles(const MolGraph& mol);

enum class CanonMode {
  kResonance,  // aromatic bonds form their own class
  kExact,      // Kekulé orders only; used for enumeration intermediates
};

// Rank of every atom under a canonical labelling: isomorphic graphs get
// rankings related by the isomorphism.
std::vector<int> canonical_ranks(const MolGraph& mol,
                                 CanonMode mode = CanonMode::kResonance);
std::string canonical_smiles(const MolGraph& mol,
                             CanonMode mode = CanonMode::kResonance);
std::string canonical_smiles(std::string_view smiles);
std::optional<std::string> try_canonical(std::string_view smiles) noexcept;

}  // namespace rel::chem
