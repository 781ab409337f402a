#include <algorithm>
#include <vector>

#include "rel/chem/features.hpp"

namespace rel::chem {
namespace {

std::uint64_t hash_ints(const std::vector<int>& v) {
  std::uint64_t h = 1469598103934665603ULL;
  for (int x : v) {
    for (int k = 0; k < 4; ++k) {
      h ^= static_cast<std::uint64_t>((x >> (8 * k)) & 0xff);
      h *= 1099511628211ULL;
    }
  }
  return h;
}

class PathWalker {
 public:
  PathWalker(const MolGraph& mol, int max_bonds, Fingerprint& fp)
      : mol_(mol), max_bonds_(max_bonds), fp_(fp), on_(mol.n_atoms(), 0) {}

  void from(int start) {
    seq_.clear();
    seq_.push_back(atom_label(start));
    on_[start] = 1;
    record();
    extend(start, 0);
    on_[start] = 0;
  }

 private:
  int atom_label(int i) const {
    const Atom& a = mol_.atom(i);
    return a.z * 4 + (a.aromatic ? 1 : 0) + (a.charge != 0 ? 2 : 0);
  }

  void record() {
    std::vector<int> rev(seq_.rbegin(), seq_.rend());
    fp_.set(hash_ints(std::min(seq_, rev)) % kFingerprintBits);
  }

  void extend(int v, int depth) {
    if (depth == max_bonds_) return;
    for (const auto& nb : mol_.neighbors(v)) {
      if (on_[nb.atom]) continue;
      on_[nb.atom] = 1;
      seq_.push_back(-bond_class(mol_.bond(nb.bond)));
      seq_.push_back(atom_label(nb.atom));
      record();
      extend(nb.atom, depth + 1);
      seq_.pop_back();
      seq_.pop_back();
      on_[nb.atom] = 0;
    }
  }

  const MolGraph& mol_;
  int max_bonds_;
  Fingerprint& fp_;
  std::vector<char> on_;
  std::vector<int> seq_;
};

}  // namespace

Fingerprint path_fingerprint(const MolGraph& mol, int max_bonds) {
  Fingerprint fp;
  PathWalker w(mol, max_bonds, fp);
  for (int i = 0; i < mol.n_atoms(); ++i) w.from(i);
  return fp;
}

double tanimoto(const Fingerprint& a, const Fingerprint& b) {
  std::size_t uni = (a | b).count();
  if (uni == 0) return 0.0;
  return static_cast<double>((a & b).count()) / static_cast<double>(uni);
}

}  // namespace rel::chem
