#pragma once

#include <map>
#include <string>
#include <vector>

#include "rel/core/task.hpp"
#include "rel/harness/aggregate.hpp"

namespace rel::harness {

// One aggregated, scored instance plus the features used for stratification
// and regression (oc_params, numeric gen_params and rc).
struct ScoreRow {
  std::string instance_id;
  TaskCode task_code = TaskCode::A1;
  int rc = 0;
  std::string aggregate = "single";
  int n_samples = 1;
  int n_present = 0;
  int n_errored = 0;
  bool flagged = false;
  ScoreResult score;
  std::map<std::string, double> features;
};

Json row_to_json(const ScoreRow& r);
ScoreRow row_from_json(const Json& j);
std::vector<ScoreRow> load_score_rows(const std::string& path);
void save_score_rows(const std::string& path, const std::vector<ScoreRow>& rows);

std::map<std::string, double> instance_features(const TaskInstance& inst);

std::vector<ScoreRow> make_score_rows(const std::vector<TaskInstance>& dataset,
                                      const std::vector<AggregateResult>& results,
                                      const AggregationPolicy& policy);

struct StratumRow {
  std::string key;    // e.g. "rc" or "task_code+rc"
  std::string value;  // e.g. "4" or "A1/4"
  std::size_t n = 0;
  double mean = 0.0;  // mean score
  double se = 0.0;    // standard error of the mean
  double accuracy = 0.0;
};

// Known keys: all, task_code, domain, rc, n_molecules, motif_ratio_bin,
// prompt_len_bin, distance_bin, or any feature name. "a+b" crosses keys.
// Flagged rows are excluded.
std::vector<StratumRow> stratified_report(const std::vector<ScoreRow>& rows,
                                          const std::vector<std::string>& keys);

const std::vector<std::string>& default_strata();

std::string report_tsv(const std::vector<StratumRow>& report);
std::string report_text(const std::vector<StratumRow>& report);

}  // namespace rel::harness
