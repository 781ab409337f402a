#pragma once

// A small mixed dataset and a deterministic scripted responder.

#include <map>
#include <string>
#include <vector>

#include "rel/core/text.hpp"
#include "rel/harness/evaluate.hpp"
#include "rel/harness/generate.hpp"
#include "rel/harness/scoring.hpp"

namespace fixtures {

inline std::vector<rel::TaskInstance> mixed_dataset(const std::string& base_dir) {
  using rel::Json;
  using rel::TaskCode;
  std::vector<rel::TaskInstance> out;
  auto add = [&](TaskCode c, Json p, std::uint64_t seed) {
    auto part = rel::harness::generate_tasks(c, p, seed, base_dir);
    out.insert(out.end(), part.begin(), part.end());
  };
  add(TaskCode::A1, {{"count", 3}}, 1);
  add(TaskCode::A5, {{"count", 2}}, 2);
  add(TaskCode::A7, {{"count", 2}}, 3);
  add(TaskCode::B1, {{"count", 3}, {"n_leaves", 12}, {"l_seq", 120}, {"l_motif", 10}}, 4);
  add(TaskCode::B2, {{"count", 3}, {"k", 2}}, 5);
  add(TaskCode::C1, {{"count", 2}, {"balanced", true}}, 6);
  add(TaskCode::C3, {{"count", 2}}, 7);
  add(TaskCode::C4, {{"count", 1}}, 8);
  return out;
}

// Text a fixed "model" gives for a prompt: the reference answer for roughly
// half of the questions, a plausible wrong one otherwise.
class ScriptedModel {
 public:
  ScriptedModel(const std::vector<rel::TaskInstance>& dataset,
                const rel::harness::EvalOptions& opts) {
    for (std::size_t i = 0; i < dataset.size(); ++i) {
      const auto& inst = dataset[i];
      std::string text = rel::harness::reference_response(inst);
      if (rel::fnv1a64(inst.id) % 2 == 1) text = wrong_answer(inst);
      replies_[rel::harness::prompt_for(dataset, i, opts)] = text;
    }
  }

  std::string reply(const std::string& prompt) const {
    auto it = replies_.find(prompt);
    return it == replies_.end() ? "unknown prompt" : it->second;
  }

  static std::string wrong_answer(const rel::TaskInstance& inst) {
    using rel::TaskCode;
    switch (inst.task_code) {
      case TaskCode::B1: return "Yes: 1, 2";
      case TaskCode::B2: return "Z";
      case TaskCode::C1: return "<Yes> <No>";
      case TaskCode::C2:
      case TaskCode::C3: return "<smiles>C</smiles>";
      case TaskCode::C4: return "<indices>0</indices>";
      default: return "-1";
    }
  }

 private:
  std::map<std::string, std::string> replies_;
};

// B1 question whose homoplastic taxa are 3 and 46, and five sampled
// answers naming {3,46}, {3}, {3}, {46}, {3,46}.
inline rel::TaskInstance b1_vote_instance() {
  rel::TaskInstance inst;
  inst.id = "b1-vote";
  inst.domain = rel::Domain::kBiology;
  inst.task_code = rel::TaskCode::B1;
  inst.gen_params = {{"n_ht", 2}};
  inst.rc = 2;
  inst.prompt = "Homoplasy question";
  inst.answer = rel::YesNoTaxa{true, {"3", "46"}};
  return inst;
}

inline std::vector<std::string> b1_vote_samples() {
  return {"Yes: 3, 46", "Yes: 3", "Yes: 3", "Yes: 46", "Yes: 3, 46"};
}

inline std::vector<rel::harness::RunRecord> records_for(const rel::TaskInstance& inst,
                                                        const std::vector<std::string>& texts) {
  std::vector<rel::harness::RunRecord> out;
  for (std::size_t s = 0; s < texts.size(); ++s) {
    rel::harness::RunRecord r;
    r.instance_id = inst.id;
    r.task_code = inst.task_code;
    r.sample = static_cast<int>(s);
    r.raw = texts[s];
    r.score = rel::harness::score_response(inst, texts[s]);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace fixtures
