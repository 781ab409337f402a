#pragma once

#include <string>
#include <vector>

#include "rel/core/task.hpp"

namespace oracle {

// Reads the alignment and tree back out of a B1 prompt. For positive
// instances checks that every answer taxon carries the recorded motif at
// the recorded columns and that all answer taxa are pairwise at least
// `min_distance` edges apart. Negative instances only need a well-formed
// prompt. Returns the problems found.
std::vector<std::string> verify_b1(const rel::TaskInstance& inst);

// Leaf-to-leaf edge counts from a Newick string (lengths ignored).
int newick_distance(const std::string& newick, const std::string& a, const std::string& b);

}  // namespace oracle
