#pragma once

#include <string>
#include <string_view>

#include "rel/core/task.hpp"

namespace rel::harness {

struct ScoreResult {
  double score = 0.0;  // task metric in [0, 1]
  bool correct = false;
  bool parsed = false;
  // Normalized answer the response committed to (null when unparseable).
  // Shapes: algebra int; B1 {"yes", "taxa"}; B2 letter; C1 bool; C2 SMILES;
  // C3 {"valid", "invalid"}; C4 {"motifs": {index: SMILES}}.
  Json answer = nullptr;
  Json detail = Json::object();
};

// Routes to the task's scorer. Never throws on model text.
ScoreResult score_response(const TaskInstance& inst, std::string_view text);

// Response text that score_response reads back as `answer`.
std::string answer_text(const TaskInstance& inst, const Json& answer);

// A response earning full marks, written in the prompt's output format.
std::string reference_response(const TaskInstance& inst);

Json score_to_json(const ScoreResult& s);
ScoreResult score_from_json(const Json& j);

}  // namespace rel::harness
