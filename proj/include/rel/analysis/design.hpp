#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rel/core/task.hpp"
#include "rel/harness/report.hpp"

namespace rel::analysis {

enum class PredictorKind { kNumeric, kBinned };

struct PredictorSpec {
  std::string name;     // group name in the output
  std::string feature;  // key into ScoreRow::features
  PredictorKind kind = PredictorKind::kNumeric;
  std::vector<double> edges;  // binned: ascending bin edges
  int quantiles = 0;          // binned without edges: equal-count bins
};

struct DesignSpec {
  std::string response = "correct";  // "correct" or "score"
  std::optional<std::string> task_code;  // restrict rows to one task
  std::vector<PredictorSpec> predictors;
};

// {"response": "correct", "task_code": "B1", "groups": [
//   {"name": "n_ht", "feature": "n_ht"},
//   {"name": "motif_ratio", "feature": "motif_ratio", "bins": [0, 0.05, 0.1]},
//   {"name": "prompt", "feature": "prompt_chars", "quantiles": 5}]}
DesignSpec design_spec_from_json(const Json& j);

// Predictors only; the intercept is added by the fit.
struct DesignMatrix {
  std::vector<std::string> columns;
  std::vector<int> group_of;  // column -> index into groups
  std::vector<std::string> groups;
  std::vector<std::vector<double>> x;  // row-major
  std::vector<double> y;
  std::size_t dropped_rows = 0;  // flagged or missing a feature
  std::vector<std::string> warnings;

  std::size_t rows() const { return y.size(); }
  std::size_t cols() const { return columns.size(); }
};

// Binned predictors expand to indicators with the first occupied bin as
// reference. Values outside the edges fall into the nearest end bin.
// Constant columns are dropped with a warning; a group left without
// columns is dropped too.
DesignMatrix build_design(const std::vector<harness::ScoreRow>& rows, const DesignSpec& spec);

// Bin index of v for ascending edges (clamped to [0, edges.size() - 2]).
std::size_t bin_index(const std::vector<double>& edges, double v);

std::vector<double> quantile_edges(std::vector<double> values, int q);

}  // namespace rel::analysis
