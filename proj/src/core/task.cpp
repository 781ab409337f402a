#include "rel/core/task.hpp"

#include <array>

#include "rel/core/error.hpp"
#include "rel/core/text.hpp"

namespace rel {
namespace {

constexpr std::array<std::string_view, 13> kCodeNames = {
    "A1", "A2", "A3", "A4", "A5", "A6", "A7",
    "B1", "B2", "C1", "C2", "C3", "C4"};

template <class T>
T require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw ParseError(std::string("missing key '") + key + "'");
  }
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception& e) {
    throw ParseError(std::string("bad value for '") + key + "': " + e.what());
  }
}

}  // namespace

std::string_view to_string(Domain d) {
  switch (d) {
    case Domain::kAlgebra: return "algebra";
    case Domain::kBiology: return "biology";
    case Domain::kChemistry: return "chemistry";
  }
  return "?";
}

std::string_view to_string(TaskCode c) {
  return kCodeNames[static_cast<std::size_t>(c)];
}

Domain parse_domain(std::string_view s) {
  if (s == "algebra") return Domain::kAlgebra;
  if (s == "biology") return Domain::kBiology;
  if (s == "chemistry") return Domain::kChemistry;
  throw ParseError("unknown domain '" + std::string(s) + "'");
}

TaskCode parse_task_code(std::string_view s) {
  for (std::size_t i = 0; i < kCodeNames.size(); ++i) {
    if (kCodeNames[i] == s) return static_cast<TaskCode>(i);
  }
  throw ParseError("unknown task code '" + std::string(s) + "'");
}

Domain domain_of(TaskCode c) {
  if (is_algebra(c)) return Domain::kAlgebra;
  if (c == TaskCode::B1 || c == TaskCode::B2) return Domain::kBiology;
  return Domain::kChemistry;
}

bool is_algebra(TaskCode c) {
  return static_cast<int>(c) <= static_cast<int>(TaskCode::A7);
}

std::string_view variant_name(const AnswerSpec& a) {
  static constexpr std::array<std::string_view, 6> kNames = {
      "ChoiceIndex", "YesNoTaxa", "Letter", "SmilesSet", "Smiles", "MotifMap"};
  return kNames[a.index()];
}

std::string instance_id(TaskCode code, const Json& gen_params,
                        std::uint64_t seed) {
  std::string payload(to_string(code));
  payload += '\n';
  payload += gen_params.dump();
  payload += '\n';
  payload += std::to_string(seed);
  return std::string(to_string(code)) + "-" + hex64(fnv1a64(payload));
}

int expected_rc(TaskCode code, const Json& gp) {
  switch (code) {
    case TaskCode::A1: return 1;
    case TaskCode::A2: return 2;
    case TaskCode::A3:
    case TaskCode::A4: return gp.at("n").get<int>();
    case TaskCode::A5: return 4;
    case TaskCode::A6: return 5;
    case TaskCode::A7: return 6;
    case TaskCode::B1: return gp.at("n_ht").get<int>();
    case TaskCode::B2: return gp.at("k").get<int>();
    case TaskCode::C1:
    case TaskCode::C2: return 2;
    case TaskCode::C3: return gp.at("n_isomers").get<int>();
    case TaskCode::C4: return gp.at("n_molecules").get<int>();
  }
  return 0;
}

void validate_instance(const TaskInstance& inst) {
  if (inst.prompt.empty()) throw IntegrityError(inst.id + ": empty prompt");
  if (inst.rc < 1) throw IntegrityError(inst.id + ": rc must be positive");
  if (inst.domain != domain_of(inst.task_code)) {
    throw IntegrityError(inst.id + ": domain does not match task code");
  }
  if (inst.rc != expected_rc(inst.task_code, inst.gen_params)) {
    throw IntegrityError(inst.id + ": rc violates the task's RC law");
  }
  if (const auto* c = std::get_if<ChoiceIndex>(&inst.answer)) {
    if (c->index < 0 ||
        c->index >= static_cast<int>(c->candidates.size())) {
      throw IntegrityError(inst.id + ": choice index out of range");
    }
    for (std::size_t i = 0; i < c->candidates.size(); ++i) {
      for (std::size_t j = i + 1; j < c->candidates.size(); ++j) {
        if (c->candidates[i] == c->candidates[j]) {
          throw IntegrityError(inst.id + ": duplicate candidates");
        }
      }
    }
  }
}

Json answer_to_json(const AnswerSpec& a) {
  Json j = Json::object();
  j["variant"] = std::string(variant_name(a));
  std::visit(
      [&j](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, ChoiceIndex>) {
          j["index"] = v.index;
          j["candidates"] = v.candidates;
        } else if constexpr (std::is_same_v<T, YesNoTaxa>) {
          j["yes"] = v.yes;
          j["taxa"] = v.taxa;
        } else if constexpr (std::is_same_v<T, Letter>) {
          j["letter"] = std::string(1, v.letter);
          j["n_options"] = v.n_options;
        } else if constexpr (std::is_same_v<T, SmilesSet>) {
          j["smiles"] = v.smiles;
        } else if constexpr (std::is_same_v<T, Smiles>) {
          j["smiles"] = v.smiles;
        } else {
          Json m = Json::object();
          for (const auto& [k, s] : v.motifs) m[std::to_string(k)] = s;
          j["motifs"] = m;
          j["target"] = v.target;
          j["fg_kind"] = v.fg_kind;
        }
      },
      a);
  return j;
}

AnswerSpec answer_from_json(const Json& j) {
  auto variant = require<std::string>(j, "variant");
  if (variant == "ChoiceIndex") {
    return ChoiceIndex{require<int>(j, "index"),
                       require<std::vector<std::int64_t>>(j, "candidates")};
  }
  if (variant == "YesNoTaxa") {
    return YesNoTaxa{require<bool>(j, "yes"),
                     require<std::set<std::string>>(j, "taxa")};
  }
  if (variant == "Letter") {
    auto s = require<std::string>(j, "letter");
    if (s.size() != 1) throw ParseError("letter must be one character");
    return Letter{s[0], require<int>(j, "n_options")};
  }
  if (variant == "SmilesSet") {
    return SmilesSet{require<std::set<std::string>>(j, "smiles")};
  }
  if (variant == "Smiles") {
    return Smiles{require<std::string>(j, "smiles")};
  }
  if (variant == "MotifMap") {
    MotifMap m;
    const Json& motifs = j.at("motifs");
    for (auto it = motifs.begin(); it != motifs.end(); ++it) {
      auto idx = parse_int(it.key());
      if (!idx) throw ParseError("motif key must be an integer");
      m.motifs[static_cast<int>(*idx)] = it.value().get<std::string>();
    }
    m.target = require<int>(j, "target");
    m.fg_kind = require<std::string>(j, "fg_kind");
    return m;
  }
  throw ParseError("unknown answer variant '" + variant + "'");
}

Json instance_to_json(const TaskInstance& inst) {
  Json j = Json::object();
  j["id"] = inst.id;
  j["domain"] = std::string(to_string(inst.domain));
  j["task_code"] = std::string(to_string(inst.task_code));
  j["rc"] = inst.rc;
  j["oc_params"] = inst.oc_params;
  j["prompt"] = inst.prompt;
  j["answer"] = answer_to_json(inst.answer);
  j["gen_params"] = inst.gen_params;
  j["seed"] = inst.seed;
  return j;
}

TaskInstance instance_from_json(const Json& j) {
  TaskInstance inst;
  inst.id = require<std::string>(j, "id");
  inst.domain = parse_domain(require<std::string>(j, "domain"));
  inst.task_code = parse_task_code(require<std::string>(j, "task_code"));
  inst.rc = require<int>(j, "rc");
  inst.oc_params = require<std::map<std::string, double>>(j, "oc_params");
  inst.prompt = require<std::string>(j, "prompt");
  if (!j.contains("answer")) throw ParseError("missing key 'answer'");
  inst.answer = answer_from_json(j.at("answer"));
  if (!j.contains("gen_params") || !j.at("gen_params").is_object()) {
    throw ParseError("missing or non-object 'gen_params'");
  }
  inst.gen_params = j.at("gen_params");
  inst.seed = require<std::uint64_t>(j, "seed");
  return inst;
}

}  // namespace rel
