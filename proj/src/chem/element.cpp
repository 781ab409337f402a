#include "rel/chem/element.hpp"

#include <array>

namespace rel::chem {
namespace {

constexpr std::array<std::string_view, 119> kSymbols = {
    "",   "H",  "He", "Li", "Be", "B",  "C",  "N",  "O",  "F",  "Ne", "Na",
    "Mg", "Al", "Si", "P",  "S",  "Cl", "Ar", "K",  "Ca", "Sc", "Ti", "V",
    "Cr", "Mn", "Fe", "Co", "Ni", "Cu", "Zn", "Ga", "Ge", "As", "Se", "Br",
    "Kr", "Rb", "Sr", "Y",  "Zr", "Nb", "Mo", "Tc", "Ru", "Rh", "Pd", "Ag",
    "Cd", "In", "Sn", "Sb", "Te", "I",  "Xe", "Cs", "Ba", "La", "Ce", "Pr",
    "Nd", "Pm", "Sm", "Eu", "Gd", "Tb", "Dy", "Ho", "Er", "Tm", "Yb", "Lu",
    "Hf", "Ta", "W",  "Re", "Os", "Ir", "Pt", "Au", "Hg", "Tl", "Pb", "Bi",
    "Po", "At", "Rn", "Fr", "Ra", "Ac", "Th", "Pa", "U",  "Np", "Pu", "Am",
    "Cm", "Bk", "Cf", "Es", "Fm", "Md", "No", "Lr", "Rf", "Db", "Sg", "Bh",
    "Hs", "Mt", "Ds", "Rg", "Cn", "Nh", "Fl", "Mc", "Lv", "Ts", "Og"};

struct ValenceRow {
  int z;
  int charge;
  std::array<int, 3> v;
  int n;
};

// Neutral rows follow the usual SMILES organic-subset conventions; S and P
// keep their hypervalent states so that sulfonyl and phosphate groups in
// drug banks parse.
constexpr ValenceRow kValences[] = {
    {1, 0, {1}, 1},        {5, 0, {3}, 1},        {5, -1, {4}, 1},
    {6, 0, {4}, 1},        {6, 1, {3}, 1},        {6, -1, {3}, 1},
    {7, 0, {3}, 1},        {7, 1, {4}, 1},        {7, -1, {2}, 1},
    {8, 0, {2}, 1},        {8, 1, {3}, 1},        {8, -1, {1}, 1},
    {9, 0, {1}, 1},        {14, 0, {4}, 1},       {15, 0, {3, 5}, 2},
    {15, 1, {4}, 1},       {15, -1, {2}, 1},      {16, 0, {2, 4, 6}, 3},
    {16, 1, {3, 5}, 2},    {16, -1, {1, 3, 5}, 3}, {17, 0, {1}, 1},
    {17, -1, {0}, 1},      {33, 0, {3, 5}, 2},    {34, 0, {2, 4, 6}, 3},
    {34, 1, {3}, 1},       {35, 0, {1}, 1},       {35, -1, {0}, 1},
    {53, 0, {1}, 1},       {53, -1, {0}, 1},      {9, -1, {0}, 1},
};

}  // namespace

int atomic_number(std::string_view symbol) noexcept {
  for (std::size_t z = 1; z < kSymbols.size(); ++z)
    if (kSymbols[z] == symbol) return static_cast<int>(z);
  return 0;
}

std::string_view element_symbol(int z) noexcept {
  if (z <= 0 || z >= static_cast<int>(kSymbols.size())) return "?";
  return kSymbols[z];
}

bool is_organic_subset(int z) noexcept {
  switch (z) {
    case 5: case 6: case 7: case 8: case 9: case 15: case 16: case 17:
    case 35: case 53:
      return true;
    default:
      return false;
  }
}

bool can_be_aromatic(int z) noexcept {
  switch (z) {
    case 5: case 6: case 7: case 8: case 15: case 16: case 33: case 34:
      return true;
    default:
      return false;
  }
}

bool is_halogen(int z) noexcept {
  return z == 9 || z == 17 || z == 35 || z == 53;
}

std::span<const int> allowed_valences(int z, int charge) noexcept {
  for (const auto& row : kValences)
    if (row.z == z && row.charge == charge)
      return std::span<const int>(row.v.data(), row.n);
  return {};
}

int enumeration_valence(int z) noexcept {
  switch (z) {
    case 6: return 4;
    case 7: return 3;
    case 8: return 2;
    case 16: return 2;
    case 9: case 17: case 35: case 53: return 1;
    default: return 0;
  }
}

}  // namespace rel::chem
