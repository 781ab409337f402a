#include <cctype>
#include <map>
#include <string>

#include "rel/chem/element.hpp"
#include "rel/chem/kekulize.hpp"
#include "rel/chem/smiles.hpp"
#include "rel/core/error.hpp"

namespace rel::chem {
namespace {

struct RawAtom {
  int z = 0;
  int charge = 0;
  int h = -1;  // -1: implicit
  bool aromatic = false;
};

// Bond symbol before resolution; 0 means none was written.
struct RawBond {
  int a, b;
  char sym;
};

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  MolGraph run() {
    if (s_.empty()) fail("empty string");
    int prev = -1;
    char bond = 0;
    std::vector<int> branches;
    while (pos_ < s_.size()) {
      char c = s_[pos_];
      if (c == '(') {
        if (prev < 0) fail("branch without a preceding atom");
        if (bond) fail("bond symbol before '('");
        branches.push_back(prev);
        ++pos_;
      } else if (c == ')') {
        if (branches.empty()) fail("unbalanced branch: unexpected ')'");
        if (bond) fail("bond symbol before ')'");
        prev = branches.back();
        branches.pop_back();
        ++pos_;
      } else if (c == '-' || c == '=' || c == '#' || c == ':' || c == '/' ||
                 c == '\\') {
        if (bond) fail("two consecutive bond symbols");
        bond = (c == '/' || c == '\\') ? '-' : c;
        ++pos_;
      } else if (c == '$') {
        fail("quadruple bonds are not supported");
      } else if (c == '.') {
        if (bond) fail("bond symbol before '.'");
        prev = -1;
        ++pos_;
      } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '%') {
        if (prev < 0) fail("ring closure without a preceding atom");
        ring_closure(prev, bond, read_ring_number());
        bond = 0;
      } else {
        int a = read_atom();
        if (prev >= 0) raw_bonds_.push_back({prev, a, bond});
        else if (bond) fail("bond symbol without a preceding atom");
        bond = 0;
        prev = a;
      }
    }
    if (bond) fail("dangling bond symbol at end of input");
    if (!branches.empty()) fail("unbalanced branch: missing ')'");
    if (!open_.empty())
      throw ParseError("smiles: ring " + std::to_string(open_.begin()->first) +
                       " never closes");
    return build();
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("smiles: " + what + " (at position " +
                     std::to_string(pos_) + ")");
  }

  int read_ring_number() {
    if (s_[pos_] == '%') {
      if (pos_ + 2 >= s_.size() ||
          !std::isdigit(static_cast<unsigned char>(s_[pos_ + 1])) ||
          !std::isdigit(static_cast<unsigned char>(s_[pos_ + 2])))
        fail("'%' must be followed by two digits");
      int n = (s_[pos_ + 1] - '0') * 10 + (s_[pos_ + 2] - '0');
      pos_ += 3;
      return n;
    }
    return s_[pos_++] - '0';
  }

  void ring_closure(int atom, char bond, int n) {
    auto it = open_.find(n);
    if (it == open_.end()) {
      open_[n] = {atom, bond};
      return;
    }
    auto [other, obond] = it->second;
    open_.erase(it);
    if (other == atom) fail("ring closure " + std::to_string(n) + " to itself");
    if (bond && obond && bond != obond)
      fail("ring closure " + std::to_string(n) + " has conflicting bond symbols");
    raw_bonds_.push_back({other, atom, bond ? bond : obond});
  }

  int read_atom() {
    RawAtom a;
    char c = s_[pos_];
    if (c == '[') {
      read_bracket(a);
    } else if (c == '*') {
      fail("wildcard atoms are not supported");
    } else {
      std::string sym;
      if (c == 'C' && peek(1) == 'l') sym = "Cl";
      else if (c == 'B' && peek(1) == 'r') sym = "Br";
      else sym = std::string(1, c);
      if (std::islower(static_cast<unsigned char>(sym[0]))) {
        a.aromatic = true;
        sym[0] = static_cast<char>(std::toupper(sym[0]));
      }
      int z = atomic_number(sym);
      if (z == 0 || !is_organic_subset(z) ||
          (a.aromatic && !can_be_aromatic(z))) {
        if (std::isalpha(static_cast<unsigned char>(c)))
          fail("unknown element '" + std::string(s_.substr(pos_, sym.size())) +
               "' outside brackets");
        fail(std::string("unexpected character '") + c + "'");
      }
      a.z = z;
      pos_ += sym.size();
    }
    raw_atoms_.push_back(a);
    return static_cast<int>(raw_atoms_.size()) - 1;
  }

  char peek(std::size_t k) const {
    return pos_ + k < s_.size() ? s_[pos_ + k] : '\0';
  }

  void read_bracket(RawAtom& a) {
    std::size_t close = s_.find(']', pos_);
    if (close == std::string_view::npos) fail("unterminated bracket atom");
    std::string_view body = s_.substr(pos_ + 1, close - pos_ - 1);
    std::size_t i = 0;
    while (i < body.size() && std::isdigit(static_cast<unsigned char>(body[i])))
      ++i;  // isotope, ignored
    if (i >= body.size()) fail("bracket atom without element");
    std::string sym;
    if (std::islower(static_cast<unsigned char>(body[i]))) {
      // Aromatic: se, as, te or a single letter.
      std::string two(body.substr(i, 2));
      if (two == "se" || two == "as" || two == "te") {
        sym = two;
      } else {
        sym = std::string(1, body[i]);
      }
      a.aromatic = true;
      i += sym.size();
      sym[0] = static_cast<char>(std::toupper(sym[0]));
      a.z = atomic_number(sym);
      if (a.z == 0 || !can_be_aromatic(a.z))
        fail("unknown aromatic element '" + std::string(body.substr(i - sym.size(), sym.size())) + "'");
    } else {
      if (!std::isupper(static_cast<unsigned char>(body[i])))
        fail("bracket atom without element");
      if (i + 1 < body.size() &&
          std::islower(static_cast<unsigned char>(body[i + 1])) &&
          atomic_number(body.substr(i, 2)) != 0) {
        sym = std::string(body.substr(i, 2));
      } else {
        sym = std::string(1, body[i]);
      }
      a.z = atomic_number(sym);
      if (a.z == 0) {
        std::size_t j = i + 1;
        while (j < body.size() && std::islower(static_cast<unsigned char>(body[j])))
          ++j;
        fail("unknown element '" + std::string(body.substr(i, j - i)) + "'");
      }
      i += sym.size();
    }
    while (i < body.size() && body[i] == '@') {
      ++i;
      while (i < body.size() && (std::isupper(static_cast<unsigned char>(body[i])) &&
                                 body[i] != 'H'))
        ++i;
      while (i < body.size() && std::isdigit(static_cast<unsigned char>(body[i])))
        ++i;
    }
    a.h = 0;
    if (i < body.size() && body[i] == 'H') {
      ++i;
      a.h = 1;
      if (i < body.size() && std::isdigit(static_cast<unsigned char>(body[i]))) {
        a.h = 0;
        while (i < body.size() && std::isdigit(static_cast<unsigned char>(body[i])))
          a.h = a.h * 10 + (body[i++] - '0');
      }
    }
    if (i < body.size() && (body[i] == '+' || body[i] == '-')) {
      char sign = body[i++];
      int mag = 1;
      if (i < body.size() && std::isdigit(static_cast<unsigned char>(body[i]))) {
        mag = 0;
        while (i < body.size() && std::isdigit(static_cast<unsigned char>(body[i])))
          mag = mag * 10 + (body[i++] - '0');
      } else {
        while (i < body.size() && body[i] == sign) {
          ++mag;
          ++i;
        }
      }
      a.charge = sign == '+' ? mag : -mag;
    }
    if (i < body.size() && body[i] == ':') {
      ++i;
      while (i < body.size() && std::isdigit(static_cast<unsigned char>(body[i])))
        ++i;
    }
    if (i != body.size())
      fail("unexpected '" + std::string(body.substr(i)) + "' in bracket atom");
    pos_ = close + 1;
  }

  MolGraph build() {
    int n = static_cast<int>(raw_atoms_.size());
    MolGraph mol;
    for (const auto& ra : raw_atoms_) {
      Atom a;
      a.z = ra.z;
      a.charge = ra.charge;
      a.aromatic = ra.aromatic;
      mol.add_atom(a);
    }
    std::vector<bool> pending;
    for (const auto& rb : raw_bonds_) {
      int order = 1;
      bool arom = false;
      switch (rb.sym) {
        case 0:
          arom = raw_atoms_[rb.a].aromatic && raw_atoms_[rb.b].aromatic;
          break;
        case ':': arom = true; break;
        case '=': order = 2; break;
        case '#': order = 3; break;
        default: break;
      }
      try {
        mol.add_bond(rb.a, rb.b, order, arom);
      } catch (const ParseError& e) {
        throw ParseError(std::string("smiles: ") + e.what());
      }
      pending.push_back(arom);
    }
    std::vector<bool> need(n, false);
    for (int i = 0; i < n; ++i) {
      Atom& a = mol.atom(i);
      int sum = 0;
      for (const auto& nb : mol.neighbors(i)) {
        const Bond& b = mol.bond(nb.bond);
        sum += b.aromatic ? 1 : b.order;
      }
      bool nd = false;
      if (raw_atoms_[i].h < 0) {
        int h = implicit_hydrogens(a.z, a.charge, a.aromatic, sum, nd);
        if (h < 0) valence_error(i, sum);
        a.hydrogens = h;
      } else {
        a.hydrogens = raw_atoms_[i].h;
        if (!check_bracket_atom(a.z, a.charge, a.aromatic, sum, a.hydrogens, nd))
          valence_error(i, sum + a.hydrogens);
      }
      need[i] = nd;
    }
    if (!kekulize(mol, pending, need))
      throw ParseError("smiles: cannot kekulize the aromatic system");
    mol = fold_explicit_hydrogens(mol);
    perceive_resonance(mol);
    return mol;
  }

  [[noreturn]] void valence_error(int atom, int total) const {
    throw ParseError("smiles: valence violation at atom " +
                     std::to_string(atom + 1) + " (" +
                     std::string(element_symbol(raw_atoms_[atom].z)) + " with " +
                     std::to_string(total) + " bonds)");
  }

  static MolGraph fold_explicit_hydrogens(const MolGraph& mol) {
    std::vector<int> keep;
    bool any = false;
    for (int i = 0; i < mol.n_atoms(); ++i) {
      const Atom& a = mol.atom(i);
      bool fold = a.z == 1 && a.charge == 0 && a.hydrogens == 0 &&
                  mol.degree(i) == 1 && mol.atom(mol.neighbors(i)[0].atom).z != 1 &&
                  mol.bond(mol.neighbors(i)[0].bond).order == 1;
      if (fold) any = true;
      else keep.push_back(i);
    }
    if (!any) return mol;
    MolGraph out = mol.induced(keep);
    std::vector<int> map(mol.n_atoms(), -1);
    for (std::size_t k = 0; k < keep.size(); ++k) map[keep[k]] = static_cast<int>(k);
    for (int i = 0; i < mol.n_atoms(); ++i)
      if (map[i] < 0) ++out.atom(map[mol.neighbors(i)[0].atom]).hydrogens;
    return out;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  std::vector<RawAtom> raw_atoms_;
  std::vector<RawBond> raw_bonds_;
  std::map<int, std::pair<int, char>> open_;
};

}  // namespace

MolGraph parse_smiles(std::string_view text) {
  return Parser(text).run();
}

std::optional<MolGraph> try_parse_smiles(std::string_view text) noexcept {
  try {
    return parse_smiles(text);
  } catch (...) {
    return std::nullopt;
  }
}

}  // namespace rel::chem
