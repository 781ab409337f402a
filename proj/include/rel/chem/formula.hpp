#pragma once

#include <map>
#include <string>
#include <string_view>

#include "rel/chem/molgraph.hpp"

namespace rel::chem {

// Element counts keyed by atomic number, H included.
struct Formula {
  std::map<int, int> counts;

  int count(int z) const {
    auto it = counts.find(z);
    return it == counts.end() ? 0 : it->second;
  }
  int heavy_atoms() const;
  auto operator<=>(const Formula&) const = default;
};

Formula formula_of(const MolGraph& mol);
// "C3H3Cl3" style; element symbols must be known. Throws ParseError.
Formula parse_formula(std::string_view text);
// Hill order: C, H, then alphabetical (alphabetical throughout without C).
std::string to_string(const Formula& f);

// C - (H + X)/2 + N/2 + 1, with X the halogens. A half-integer.
double dbe_of(const Formula& f);

}  // namespace rel::chem
