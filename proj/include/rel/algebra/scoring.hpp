#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "rel/core/task.hpp"

namespace rel::algebra {

enum class ChoiceOutcome { kCorrect, kIncorrect, kUnparseable };

std::string_view to_string(ChoiceOutcome o);

// Extracts the single value a response commits to. Accepts a bare integer,
// "Answer #k" (mapped through the candidate list) or a value after a
// "final answer"/"answer:" marker. Two or more distinct values without such
// a marker make the response unparseable.
std::optional<std::int64_t> parse_choice(
    std::string_view response, const std::vector<std::int64_t>& candidates);

struct ChoiceScore {
  ChoiceOutcome outcome = ChoiceOutcome::kUnparseable;
  std::optional<std::int64_t> parsed;
};

ChoiceScore score_choice(const TaskInstance& inst, std::string_view response);

}  // namespace rel::algebra
