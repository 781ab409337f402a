#pragma once

#include <string>
#include <vector>

#include "rel/core/task.hpp"

namespace rel::harness {

struct PromptOptions {
  // Solved example shown before the question. Must share the task code and
  // have a different id.
  const TaskInstance* icl_example = nullptr;
  bool structured = false;  // B1 step-by-step scaffold
};

extern const char* const kStructuredScaffold;

std::string render_prompt(const TaskInstance& inst, const PromptOptions& opts = {});

// Index of the ICL example for dataset[i]: the next instance with the same
// task code, wrapping around. -1 when the task code occurs only once.
int icl_partner(const std::vector<TaskInstance>& dataset, std::size_t i);

}  // namespace rel::harness
