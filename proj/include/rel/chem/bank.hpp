#pragma once

#include <atomic>
#include <climits>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "rel/chem/enumerate.hpp"
#include "rel/chem/features.hpp"
#include "rel/chem/formula.hpp"
#include "rel/chem/molgraph.hpp"

namespace rel::chem {

struct BankEntry {
  std::string name;
  std::string smiles;  // canonical
  MolGraph mol;
  Fingerprint fp;
};

struct MoleculeBank {
  std::vector<BankEntry> entries;
  std::size_t skipped_unparseable = 0;
  std::size_t skipped_size = 0;
  std::size_t skipped_duplicate = 0;
};

// One SMILES per line, optional name after whitespace, '#' comments.
// Lines that fail to parse, fall outside [min_heavy, max_heavy] or repeat an
// earlier molecule are counted and skipped.
MoleculeBank parse_bank(std::string_view text, int min_heavy = 0,
                        int max_heavy = INT_MAX);
MoleculeBank load_bank(const std::string& path, int min_heavy = 0,
                       int max_heavy = INT_MAX);

struct PoolEntry {
  Formula formula;
  int n_isomers = 0;
};

// "C3H3Cl3 8" per line; the count column is optional.
std::vector<PoolEntry> parse_formula_pool(std::string_view text);
std::vector<PoolEntry> load_formula_pool(const std::string& path);
std::string format_formula_pool(const std::vector<PoolEntry>& pool);

struct PoolSpec {
  int min_carbons = 3;
  int max_carbons = 9;
  int max_heavy = 8;
  int max_hetero = 3;
  std::vector<int> hetero = {7, 8, 16, 9, 17, 35};  // N O S F Cl Br
  std::size_t min_isomers = 5;
  std::size_t max_isomers = 100;
  std::size_t max_states = 200000;
};

// Every formula of the spec with a valid H count, kept when the complete
// isomer universe has between min_isomers and max_isomers members.
std::vector<PoolEntry> build_formula_pool(const PoolSpec& spec,
                                          const std::atomic<bool>* cancel = nullptr);

// Memoized complete isomer universes, safe to share between threads.
class IsomerCache {
 public:
  explicit IsomerCache(std::size_t cap = 100000) : cap_(cap) {}
  std::shared_ptr<const IsomerSet> get(const Formula& f);

 private:
  std::size_t cap_;
  std::mutex mu_;
  std::map<Formula, std::shared_ptr<const IsomerSet>> sets_;
};

}  // namespace rel::chem
