#include "rel/chem/enumerate.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <unordered_map>

#include "rel/chem/element.hpp"
#include "rel/chem/kekulize.hpp"
#include "rel/chem/smiles.hpp"
#include "rel/core/error.hpp"

namespace rel::chem {
namespace {

constexpr int kMaxHeavy = 10;

struct Small {
  int n = 0;
  std::array<int, kMaxHeavy> z{};
  std::array<std::array<std::uint8_t, kMaxHeavy>, kMaxHeavy> o{};

  int sum(int i) const {
    int s = 0;
    for (int j = 0; j < n; ++j) s += o[i][j];
    return s;
  }
};

MolGraph to_mol(const Small& s) {
  MolGraph m;
  for (int i = 0; i < s.n; ++i) {
    Atom a;
    a.z = s.z[i];
    a.hydrogens = enumeration_valence(s.z[i]) - s.sum(i);
    m.add_atom(a);
  }
  for (int i = 0; i < s.n; ++i)
    for (int j = i + 1; j < s.n; ++j)
      if (s.o[i][j]) m.add_bond(i, j, s.o[i][j]);
  return m;
}

using Level = std::unordered_map<std::string, Small>;

bool cancelled(const EnumerateOptions& opts) {
  return opts.cancel && opts.cancel->load(std::memory_order_relaxed);
}

}  // namespace

IsomerSet enumerate_isomers(const Formula& f, const EnumerateOptions& opts) {
  IsomerSet out;
  std::map<int, int> heavy;
  int total_valence = 0;
  for (auto [z, c] : f.counts) {
    if (z == 1 || c == 0) continue;
    int v = enumeration_valence(z);
    if (v == 0)
      throw ParameterError("enumerate_isomers: element " +
                           std::string(element_symbol(z)) +
                           " is outside the C/N/O/S/halogen alphabet");
    heavy[z] = c;
    total_valence += v * c;
  }
  int n = f.heavy_atoms();
  if (n == 0) return out;
  if (n > kMaxHeavy)
    throw ParameterError("enumerate_isomers: more than 10 heavy atoms");
  int h = f.count(1);
  int twice_bonds = total_valence - h;
  if (twice_bonds < 0 || twice_bonds % 2) return out;
  int bonds = twice_bonds / 2;
  int unsat = bonds - (n - 1);
  if (unsat < 0) return out;

  Level level;
  for (auto [z, c] : heavy) {
    Small s;
    s.n = 1;
    s.z[0] = z;
    level.emplace(canonical_smiles(to_mol(s), CanonMode::kExact), s);
  }

  auto overflow = [&](const Level& l) {
    if (l.size() > opts.max_states) {
      out.truncated = true;
      out.note = "intermediate state limit reached";
      return true;
    }
    if (cancelled(opts)) {
      out.truncated = true;
      out.note = "cancelled";
      return true;
    }
    return false;
  };

  for (int step = 1; step < n; ++step) {
    Level next;
    for (const auto& [key, s] : level) {
      std::map<int, int> left = heavy;
      for (int i = 0; i < s.n; ++i) --left[s.z[i]];
      for (auto [z, c] : left) {
        if (c <= 0) continue;
        for (int a = 0; a < s.n; ++a) {
          if (s.sum(a) >= enumeration_valence(s.z[a])) continue;
          Small t = s;
          t.z[t.n] = z;
          t.o[a][t.n] = t.o[t.n][a] = 1;
          ++t.n;
          next.emplace(canonical_smiles(to_mol(t), CanonMode::kExact), t);
        }
      }
      if (overflow(next)) return out;
    }
    level.swap(next);
  }

  for (int u = 0; u < unsat; ++u) {
    Level next;
    for (const auto& [key, s] : level) {
      for (int i = 0; i < n; ++i) {
        if (s.sum(i) >= enumeration_valence(s.z[i])) continue;
        for (int j = i + 1; j < n; ++j) {
          if (s.sum(j) >= enumeration_valence(s.z[j]) || s.o[i][j] >= 3) continue;
          Small t = s;
          ++t.o[i][j];
          t.o[j][i] = t.o[i][j];
          next.emplace(canonical_smiles(to_mol(t), CanonMode::kExact), t);
        }
      }
      if (overflow(next)) return out;
    }
    level.swap(next);
  }

  std::set<std::string> members;
  for (const auto& [key, s] : level) {
    MolGraph m = to_mol(s);
    perceive_resonance(m);
    members.insert(canonical_smiles(m));
    if (members.size() > opts.cap) {
      out.truncated = true;
      out.note = "cap of " + std::to_string(opts.cap) + " isomers exceeded";
      break;
    }
  }
  out.members.assign(members.begin(), members.end());
  if (out.members.size() > opts.cap) out.members.resize(opts.cap);
  return out;
}

IsomerSet enumerate_isomers(const Formula& f, std::size_t cap) {
  EnumerateOptions opts;
  opts.cap = cap;
  return enumerate_isomers(f, opts);
}

}  // namespace rel::chem
