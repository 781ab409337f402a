#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "rel/core/task.hpp"
#include "rel/harness/evaluate.hpp"

namespace rel::harness {

enum class AggMode { kSingle, kBestOfN, kMajorityVote };

std::string_view to_string(AggMode m);
// Accepts single, best, best_of_n, majority, majority_vote.
AggMode parse_agg_mode(std::string_view s);

struct AggregationPolicy {
  AggMode mode = AggMode::kSingle;
  int n = 1;
  void validate() const;
};

struct AggregateResult {
  std::string instance_id;
  int n_present = 0;
  int n_errored = 0;
  bool flagged = false;  // missing samples; excluded from means
  ScoreResult score;
};

// One result per dataset instance, in dataset order. Duplicate
// (instance, sample) pairs throw IntegrityError.
std::vector<AggregateResult> aggregate(const std::vector<TaskInstance>& dataset,
                                       const std::vector<RunRecord>& records,
                                       const AggregationPolicy& policy);

// Majority answer over per-sample answers (null = unparsed or errored).
// Set answers are rebuilt element-wise from elements in more than half of
// all samples; single answers take the strict mode. Null when no majority.
Json majority_answer(const TaskInstance& inst, const std::vector<Json>& answers);

}  // namespace rel::harness
