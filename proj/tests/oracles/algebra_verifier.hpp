#pragma once

#include <string>
#include <vector>

#include "rel/core/task.hpp"

namespace oracle {

// Re-checks the governing rule at every cell of an algebra instance, with
// the hidden cell filled from the answer key. Returns one message per
// violated cell; empty means the instance is consistent.
std::vector<std::string> verify_algebra(const rel::TaskInstance& inst);

// Cells of an A7 cube that change under one Jacobi pass of
// cell <- (up + down + left + right) mod p within each slice.
int a7_changed_cells(const std::vector<std::vector<std::vector<long long>>>& cube, int p);

}  // namespace oracle
