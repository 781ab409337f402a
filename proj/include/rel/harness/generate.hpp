#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rel/core/task.hpp"

namespace rel::harness {

// Builds a dataset from a JSON parameter object. Shared keys:
//   count  instances per configuration (default 1)
//   sweep  {"key": [values...], ...}; the cartesian product of overrides,
//          each generating `count` instances
// Instance i overall is generated from SeededRng(seed).split(i).
// B1 also accepts a one-at-a-time schedule ({"baseline", "vary",
// "per_config"}). Relative bank/pool/landscape paths resolve against
// `base_dir`.
std::vector<TaskInstance> generate_tasks(TaskCode code, const Json& params,
                                         std::uint64_t seed,
                                         const std::string& base_dir = ".");

}  // namespace rel::harness
