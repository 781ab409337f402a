#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"

namespace rel {

using Json = nlohmann::json;

enum class Domain { kAlgebra, kBiology, kChemistry };

enum class TaskCode { A1, A2, A3, A4, A5, A6, A7, B1, B2, C1, C2, C3, C4 };

std::string_view to_string(Domain d);
std::string_view to_string(TaskCode c);
Domain parse_domain(std::string_view s);
TaskCode parse_task_code(std::string_view s);
Domain domain_of(TaskCode c);
bool is_algebra(TaskCode c);

// 8-way multiple choice over integers (algebra).
struct ChoiceIndex {
  int index = 0;
  std::vector<std::int64_t> candidates;
  std::int64_t value() const { return candidates.at(index); }
  bool operator==(const ChoiceIndex&) const = default;
};

// Presence flag plus the exact participating set (B1, and C1 with no taxa).
struct YesNoTaxa {
  bool yes = false;
  std::set<std::string> taxa;
  bool operator==(const YesNoTaxa&) const = default;
};

struct Letter {
  char letter = 'A';
  int n_options = 0;
  bool operator==(const Letter&) const = default;
};

struct SmilesSet {
  std::set<std::string> smiles;
  bool operator==(const SmilesSet&) const = default;
};

struct Smiles {
  std::string smiles;
  bool operator==(const Smiles&) const = default;
};

// One witness solution for a motif-selection instance.
struct MotifMap {
  std::map<int, std::string> motifs;
  int target = 0;
  std::string fg_kind;
  bool operator==(const MotifMap&) const = default;
};

using AnswerSpec =
    std::variant<ChoiceIndex, YesNoTaxa, Letter, SmilesSet, Smiles, MotifMap>;

std::string_view variant_name(const AnswerSpec& a);

struct TaskInstance {
  std::string id;
  Domain domain = Domain::kAlgebra;
  TaskCode task_code = TaskCode::A1;
  int rc = 1;
  std::map<std::string, double> oc_params;
  std::string prompt;
  AnswerSpec answer;
  Json gen_params = Json::object();
  std::uint64_t seed = 0;

  bool operator==(const TaskInstance&) const = default;
};

// Content hash of (task_code, gen_params, seed).
std::string instance_id(TaskCode code, const Json& gen_params,
                        std::uint64_t seed);

// RC recomputed from gen_params alone, independent of the generators.
int expected_rc(TaskCode code, const Json& gen_params);

// Validates the structural invariants shared by every task. Throws
// IntegrityError naming the first violation.
void validate_instance(const TaskInstance& inst);

Json answer_to_json(const AnswerSpec& a);
AnswerSpec answer_from_json(const Json& j);
Json instance_to_json(const TaskInstance& inst);
TaskInstance instance_from_json(const Json& j);

}  // namespace rel
