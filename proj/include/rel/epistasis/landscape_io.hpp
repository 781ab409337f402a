#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "rel/epistasis/walsh.hpp"

namespace rel::epistasis {

struct FitnessTable {
  std::vector<LocalLandscape> landscapes;
  int skipped = 0;  // incomplete blocks
};

// CSV with header background_id,genotype,label_1..label_k,fitness. Rows are
// grouped by background; only blocks holding all 2^k genotypes are kept.
// Malformed rows raise SchemaError with their line number.
FitnessTable parse_fitness_table(std::string_view csv);
FitnessTable load_fitness_table(const std::string& path);

}  // namespace rel::epistasis
