#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rel/core/task.hpp"
#include "rel/harness/endpoint.hpp"
#include "rel/harness/scoring.hpp"

namespace rel::harness {

struct RunRecord {
  std::string instance_id;
  TaskCode task_code = TaskCode::A1;
  int sample = 0;
  std::string raw;
  bool errored = false;
  std::string error;
  int attempts = 0;
  double latency_s = 0.0;
  Json usage = nullptr;
  ScoreResult score;
};

Json record_to_json(const RunRecord& r);
RunRecord record_from_json(const Json& j);
std::vector<RunRecord> load_records(const std::string& path);
void save_records(const std::string& path, const std::vector<RunRecord>& records);

struct EvalOptions {
  int n_samples = 1;
  int icl_shots = 0;  // 0 or 1
  bool structured = false;
  std::optional<double> temperature;  // default 1.0 when n_samples > 1, else 0
  int parallel = 1;

  double effective_temperature() const;
};

// Called once per finished record, serialized, in completion order.
using RecordSink = std::function<void(const RunRecord&)>;

// Collects n_samples completions per instance with at most `parallel` calls
// in flight. Output is ordered by (dataset position, sample). Failed calls
// stay in the output as errored records with score 0.
std::vector<RunRecord> evaluate_run(const std::vector<TaskInstance>& dataset,
                                    const ModelCaller& model, const EvalOptions& opts,
                                    const RecordSink& sink = {});

// The prompt evaluate_run sends for dataset[i].
std::string prompt_for(const std::vector<TaskInstance>& dataset, std::size_t i,
                       const EvalOptions& opts);

// Recomputes every score from the raw text.
void rescore(const std::vector<TaskInstance>& dataset, std::vector<RunRecord>& records);

}  // namespace rel::harness
