#pragma once

#include <cstdint>

#include "rel/algebra/types.hpp"
#include "rel/core/task.hpp"

namespace rel::algebra {

// The unique value that makes the governing rule hold at the hidden cell.
// Reads only the visible cells and the rule constants; throws
// IntegrityError if the visible cells already violate the rule.
std::int64_t solve_rule_oracle(const TaskInstance& inst);

std::int64_t solve_grid(const Grid& g, const RuleSpec& rule);
std::int64_t solve_cube(const Cube& c, const RuleSpec& rule);

}  // namespace rel::algebra
