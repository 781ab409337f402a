#pragma once

#include <span>
#include <string_view>

namespace rel::chem {

// Atomic number for a symbol, 0 if unknown. Case sensitive ("Cl", not "CL").
int atomic_number(std::string_view symbol) noexcept;
std::string_view element_symbol(int z) noexcept;

// B C N O P S F Cl Br I: may be written without brackets.
bool is_organic_subset(int z) noexcept;
// May be written lowercase in aromatic notation.
bool can_be_aromatic(int z) noexcept;
bool is_halogen(int z) noexcept;

// Allowed total valences (bond orders + H) for a charge state, ascending.
// Empty for elements without a table entry, which disables valence checks.
std::span<const int> allowed_valences(int z, int charge) noexcept;

// Single valence used by the isomer enumerator: C4 N3 O2 S2 halogens 1.
// 0 if the element is outside the enumerator's alphabet.
int enumeration_valence(int z) noexcept;

}  // namespace rel::chem
