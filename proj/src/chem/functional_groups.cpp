#include "rel/chem/features.hpp"

#include "rel/chem/rings.hpp"
#include "rel/core/error.hpp"

namespace rel::chem {
namespace {

bool is_carbonyl_o(const MolGraph& mol, int c, int o, int bond) {
  return mol.atom(o).z == 8 && mol.bond(bond).order == 2 && mol.degree(o) == 1 &&
         mol.atom(o).charge == 0 && mol.atom(c).z == 6;
}

bool has_multiple_bond(const MolGraph& mol, int a) {
  for (const auto& nb : mol.neighbors(a))
    if (mol.bond(nb.bond).order > 1 || mol.bond(nb.bond).aromatic) return true;
  return false;
}

int count_acids(const MolGraph& mol) {
  int n = 0;
  for (int c = 0; c < mol.n_atoms(); ++c) {
    const Atom& a = mol.atom(c);
    if (a.z != 6 || a.aromatic || a.charge != 0) continue;
    bool carbonyl = false, hydroxyl = false;
    for (const auto& nb : mol.neighbors(c)) {
      const Atom& o = mol.atom(nb.atom);
      if (is_carbonyl_o(mol, c, nb.atom, nb.bond)) carbonyl = true;
      else if (o.z == 8 && o.charge == 0 && o.hydrogens >= 1 &&
               mol.degree(nb.atom) == 1 && mol.bond(nb.bond).order == 1)
        hydroxyl = true;
    }
    if (carbonyl && hydroxyl) ++n;
  }
  return n;
}

int count_ketones(const MolGraph& mol) {
  int n = 0;
  for (int c = 0; c < mol.n_atoms(); ++c) {
    const Atom& a = mol.atom(c);
    if (a.z != 6 || a.aromatic || a.charge != 0 || mol.degree(c) != 3) continue;
    int carbonyl = 0, carbons = 0;
    for (const auto& nb : mol.neighbors(c)) {
      if (is_carbonyl_o(mol, c, nb.atom, nb.bond)) ++carbonyl;
      else if (mol.atom(nb.atom).z == 6 && mol.bond(nb.bond).order == 1) ++carbons;
    }
    if (carbonyl == 1 && carbons == 2) ++n;
  }
  return n;
}

int count_alcohols(const MolGraph& mol) {
  int n = 0;
  for (int o = 0; o < mol.n_atoms(); ++o) {
    const Atom& a = mol.atom(o);
    if (a.z != 8 || a.charge != 0 || a.hydrogens < 1 || mol.degree(o) != 1) continue;
    const auto& nb = mol.neighbors(o)[0];
    const Atom& c = mol.atom(nb.atom);
    if (c.z == 6 && !c.aromatic && mol.bond(nb.bond).order == 1 &&
        !has_multiple_bond(mol, nb.atom))
      ++n;
  }
  return n;
}

int count_primary_amines(const MolGraph& mol) {
  int n = 0;
  for (int i = 0; i < mol.n_atoms(); ++i) {
    const Atom& a = mol.atom(i);
    if (a.z != 7 || a.charge != 0 || a.hydrogens != 2 || mol.degree(i) != 1) continue;
    const auto& nb = mol.neighbors(i)[0];
    if (mol.atom(nb.atom).z == 6 && mol.bond(nb.bond).order == 1) ++n;
  }
  return n;
}

}  // namespace

std::string_view to_string(FgKind k) {
  switch (k) {
    case FgKind::kCarboxylicAcid: return "carboxylic_acid";
    case FgKind::kAromaticRing: return "aromatic_ring";
    case FgKind::kAlcohol: return "alcohol";
    case FgKind::kPrimaryAmine: return "primary_amine";
    case FgKind::kKetone: return "ketone";
  }
  return "?";
}

std::string_view prompt_name(FgKind k) {
  switch (k) {
    case FgKind::kCarboxylicAcid: return "total_carboxylic_acids";
    case FgKind::kAromaticRing: return "total_aromatic_rings";
    case FgKind::kAlcohol: return "total_alcohols";
    case FgKind::kPrimaryAmine: return "total_primary_amines";
    case FgKind::kKetone: return "total_ketones";
  }
  return "?";
}

FgKind parse_fg_kind(std::string_view s) {
  for (FgKind k : {FgKind::kCarboxylicAcid, FgKind::kAromaticRing, FgKind::kAlcohol,
                   FgKind::kPrimaryAmine, FgKind::kKetone})
    if (s == to_string(k) || s == prompt_name(k)) return k;
  throw ParameterError("unknown functional group kind '" + std::string(s) + "'");
}

int count_fg(const MolGraph& mol, FgKind kind) {
  switch (kind) {
    case FgKind::kCarboxylicAcid: return count_acids(mol);
    case FgKind::kAromaticRing: return count_aromatic_rings(mol);
    case FgKind::kAlcohol: return count_alcohols(mol);
    case FgKind::kPrimaryAmine: return count_primary_amines(mol);
    case FgKind::kKetone: return count_ketones(mol);
  }
  return 0;
}

}  // namespace rel::chem
