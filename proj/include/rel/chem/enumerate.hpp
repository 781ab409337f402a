#pragma once

#include <atomic>
#include <cstddef>
#include <string>
#include <vector>

#include "rel/chem/formula.hpp"

namespace rel::chem {

struct IsomerSet {
  std::vector<std::string> members;  // canonical SMILES, sorted
  bool truncated = false;            // cap or state limit hit
  std::string note;
};

struct EnumerateOptions {
  std::size_t cap = 100000;
  // Bound on intermediate graphs held at one growth level.
  std::size_t max_states = 2000000;
  const std::atomic<bool>* cancel = nullptr;
};

// All connected graphs on the formula's heavy atoms whose bond orders and
// implicit H match the enumeration valences (C4 N3 O2 S2 halogens 1).
// Graphs are grown as spanning trees, then one unsaturation unit at a time
// (raise a bond order or close a ring), deduplicated by exact canonical form
// at every level; final members are deduplicated by resonance-aware
// canonical SMILES. Throws ParameterError for elements outside the
// alphabet or more than 10 heavy atoms.
IsomerSet enumerate_isomers(const Formula& f, const EnumerateOptions& opts);
IsomerSet enumerate_isomers(const Formula& f, std::size_t cap);

}  // namespace rel::chem
