#include "rel/harness/aggregate.hpp"

#include <map>
#include <unordered_map>

#include "rel/core/error.hpp"

namespace rel::harness {

std::string_view to_string(AggMode m) {
  switch (m) {
    case AggMode::kSingle: return "single";
    case AggMode::kBestOfN: return "best_of_n";
    case AggMode::kMajorityVote: return "majority_vote";
  }
  return "single";
}

AggMode parse_agg_mode(std::string_view s) {
  if (s == "single") return AggMode::kSingle;
  if (s == "best" || s == "best_of_n" || s == "bon") return AggMode::kBestOfN;
  if (s == "majority" || s == "majority_vote" || s == "majvote") return AggMode::kMajorityVote;
  throw ParameterError("unknown aggregation mode: " + std::string(s));
}

void AggregationPolicy::validate() const {
  if (n < 1) throw ParameterError("aggregation: n must be >= 1");
  if (mode != AggMode::kSingle && n < 2)
    throw ParameterError("aggregation: " + std::string(to_string(mode)) + " needs n >= 2");
}

namespace {

// Elements present in more than half of n samples.
std::vector<std::string> majority_elements(const std::map<std::string, int>& counts, int n) {
  std::vector<std::string> out;
  for (const auto& [e, c] : counts) {
    if (2 * c > n) out.push_back(e);
  }
  return out;
}

}  // namespace

Json majority_answer(const TaskInstance& inst, const std::vector<Json>& answers) {
  const int n = static_cast<int>(answers.size());
  if (inst.task_code == TaskCode::B1) {
    int yes = 0, no = 0;
    std::map<std::string, int> taxa;
    for (const Json& a : answers) {
      if (a.is_null()) continue;
      if (a.at("yes").get<bool>()) {
        ++yes;
        for (const auto& t : a.at("taxa")) ++taxa[t.get<std::string>()];
      } else {
        ++no;
      }
    }
    if (2 * yes > n) return {{"yes", true}, {"taxa", majority_elements(taxa, n)}};
    if (2 * no > n) return {{"yes", false}, {"taxa", Json::array()}};
    return nullptr;
  }
  if (inst.task_code == TaskCode::C3) {
    std::map<std::string, int> valid, invalid;
    for (const Json& a : answers) {
      if (a.is_null()) continue;
      for (const auto& s : a.at("valid")) ++valid[s.get<std::string>()];
      for (const auto& s : a.at("invalid")) ++invalid[s.get<std::string>()];
    }
    auto v = majority_elements(valid, n);
    auto iv = majority_elements(invalid, n);
    if (v.empty() && iv.empty()) return nullptr;
    return {{"valid", v}, {"invalid", iv}};
  }
  std::map<std::string, std::pair<int, const Json*>> counts;
  for (const Json& a : answers) {
    if (a.is_null()) continue;
    auto& slot = counts[a.dump()];
    ++slot.first;
    slot.second = &a;
  }
  const Json* best = nullptr;
  int top = 0;
  bool tie = false;
  for (const auto& [key, v] : counts) {
    if (v.first > top) {
      top = v.first;
      best = v.second;
      tie = false;
    } else if (v.first == top) {
      tie = true;
    }
  }
  if (!best || tie) return nullptr;
  return *best;
}

std::vector<AggregateResult> aggregate(const std::vector<TaskInstance>& dataset,
                                       const std::vector<RunRecord>& records,
                                       const AggregationPolicy& policy) {
  policy.validate();
  std::unordered_map<std::string, std::size_t> pos;
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    if (!pos.emplace(dataset[i].id, i).second)
      throw IntegrityError("duplicate instance id in dataset: " + dataset[i].id);
  }
  const auto n = static_cast<std::size_t>(policy.n);
  std::vector<std::vector<const RunRecord*>> slots(dataset.size(),
                                                   std::vector<const RunRecord*>(n, nullptr));
  for (const auto& r : records) {
    auto it = pos.find(r.instance_id);
    if (it == pos.end()) throw IntegrityError("record for unknown instance " + r.instance_id);
    if (r.sample < 0 || static_cast<std::size_t>(r.sample) >= n) continue;
    auto& slot = slots[it->second][static_cast<std::size_t>(r.sample)];
    if (slot)
      throw IntegrityError("duplicate record for " + r.instance_id + " sample " +
                           std::to_string(r.sample));
    slot = &r;
  }

  std::vector<AggregateResult> out;
  out.reserve(dataset.size());
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    const TaskInstance& inst = dataset[i];
    AggregateResult a;
    a.instance_id = inst.id;
    std::vector<ScoreResult> scores;
    for (const RunRecord* r : slots[i]) {
      if (!r) continue;
      ++a.n_present;
      if (r->errored) ++a.n_errored;
      scores.push_back(r->errored ? ScoreResult{} : r->score);
    }
    a.flagged = a.n_present < policy.n;
    if (scores.empty()) {
      out.push_back(std::move(a));
      continue;
    }
    switch (policy.mode) {
      case AggMode::kSingle:
        a.score = slots[i][0] ? scores.front() : ScoreResult{};
        break;
      case AggMode::kBestOfN: {
        std::size_t best = 0;
        for (std::size_t k = 1; k < scores.size(); ++k) {
          if (scores[k].score > scores[best].score) best = k;
        }
        a.score = scores[best];
        break;
      }
      case AggMode::kMajorityVote: {
        std::vector<Json> answers;
        for (const auto& s : scores) answers.push_back(s.parsed ? s.answer : Json(nullptr));
        // Samples that never arrived count as abstentions.
        answers.resize(n, nullptr);
        Json maj = majority_answer(inst, answers);
        a.score = maj.is_null() ? ScoreResult{} : score_response(inst, answer_text(inst, maj));
        a.score.detail["majority_answer"] = maj;
        break;
      }
    }
    out.push_back(std::move(a));
  }
  return out;
}

}  // namespace rel::harness
