#include "rel/chem/formula.hpp"

#include <algorithm>
#include <cctype>
#include <vector>

#include "rel/chem/element.hpp"
#include "rel/core/error.hpp"

namespace rel::chem {

int Formula::heavy_atoms() const {
  int n = 0;
  for (auto [z, c] : counts)
    if (z != 1) n += c;
  return n;
}

Formula formula_of(const MolGraph& mol) {
  Formula f;
  for (const Atom& a : mol.atoms()) {
    ++f.counts[a.z];
    if (a.hydrogens > 0) f.counts[1] += a.hydrogens;
  }
  return f;
}

Formula parse_formula(std::string_view text) {
  Formula f;
  std::size_t i = 0;
  if (text.empty()) throw ParseError("formula: empty string");
  while (i < text.size()) {
    if (!std::isupper(static_cast<unsigned char>(text[i])))
      throw ParseError("formula: expected element symbol at '" +
                       std::string(text.substr(i)) + "'");
    std::size_t j = i + 1;
    while (j < text.size() && std::islower(static_cast<unsigned char>(text[j]))) ++j;
    std::string sym(text.substr(i, j - i));
    int z = atomic_number(sym);
    if (z == 0) throw ParseError("formula: unknown element '" + sym + "'");
    int n = 0;
    std::size_t k = j;
    while (k < text.size() && std::isdigit(static_cast<unsigned char>(text[k])))
      n = n * 10 + (text[k++] - '0');
    if (k == j) n = 1;
    f.counts[z] += n;
    i = k;
  }
  for (auto it = f.counts.begin(); it != f.counts.end();)
    it = it->second == 0 ? f.counts.erase(it) : std::next(it);
  return f;
}

std::string to_string(const Formula& f) {
  std::vector<std::pair<std::string, int>> parts;
  bool has_c = f.count(6) > 0;
  for (auto [z, c] : f.counts) {
    if (c == 0) continue;
    if (has_c && (z == 6 || z == 1)) continue;
    parts.emplace_back(std::string(element_symbol(z)), c);
  }
  std::sort(parts.begin(), parts.end());
  if (has_c) {
    if (f.count(1) > 0) parts.insert(parts.begin(), {"H", f.count(1)});
    parts.insert(parts.begin(), {"C", f.count(6)});
  }
  std::string out;
  for (const auto& [sym, c] : parts) {
    out += sym;
    if (c > 1) out += std::to_string(c);
  }
  return out;
}

double dbe_of(const Formula& f) {
  int x = 0;
  for (int z : {9, 17, 35, 53}) x += f.count(z);
  return f.count(6) - (f.count(1) + x) / 2.0 + f.count(7) / 2.0 + 1.0;
}

}  // namespace rel::chem
