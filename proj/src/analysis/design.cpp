#include "rel/analysis/design.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <fmt/format.h>

#include "rel/core/error.hpp"

namespace rel::analysis {

DesignSpec design_spec_from_json(const Json& j) {
  DesignSpec s;
  try {
    s.response = j.value("response", "correct");
    if (s.response != "correct" && s.response != "score")
      throw ParameterError("predictor spec: response must be \"correct\" or \"score\"");
    if (j.contains("task_code")) {
      s.task_code = j.at("task_code").get<std::string>();
      parse_task_code(*s.task_code);
    }
    for (const Json& g : j.at("groups")) {
      PredictorSpec p;
      p.feature = g.at("feature").get<std::string>();
      p.name = g.value("name", p.feature);
      if (g.contains("bins")) {
        p.kind = PredictorKind::kBinned;
        p.edges = g.at("bins").get<std::vector<double>>();
        if (p.edges.size() < 2 || !std::is_sorted(p.edges.begin(), p.edges.end()) ||
            std::adjacent_find(p.edges.begin(), p.edges.end()) != p.edges.end())
          throw ParameterError("predictor " + p.name + ": bins need >= 2 increasing edges");
      } else if (g.contains("quantiles")) {
        p.kind = PredictorKind::kBinned;
        p.quantiles = g.at("quantiles").get<int>();
        if (p.quantiles < 2) throw ParameterError("predictor " + p.name + ": quantiles must be >= 2");
      }
      s.predictors.push_back(std::move(p));
    }
  } catch (const Json::exception& e) {
    throw ParameterError(std::string("predictor spec: ") + e.what());
  }
  if (s.predictors.empty()) throw ParameterError("predictor spec: no groups");
  std::set<std::string> names;
  for (const auto& p : s.predictors) {
    if (!names.insert(p.name).second) throw ParameterError("predictor spec: duplicate group " + p.name);
  }
  return s;
}

std::size_t bin_index(const std::vector<double>& edges, double v) {
  const std::size_t nbins = edges.size() - 1;
  auto it = std::upper_bound(edges.begin(), edges.end(), v);
  std::size_t k = it == edges.begin() ? 0 : static_cast<std::size_t>(it - edges.begin()) - 1;
  return std::min(k, nbins - 1);
}

std::vector<double> quantile_edges(std::vector<double> values, int q) {
  if (values.empty()) return {};
  std::sort(values.begin(), values.end());
  std::vector<double> edges;
  const double n = static_cast<double>(values.size() - 1);
  for (int i = 0; i <= q; ++i) {
    double pos = n * i / q;
    auto lo = static_cast<std::size_t>(std::floor(pos));
    auto hi = std::min(lo + 1, values.size() - 1);
    double v = values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
    if (edges.empty() || v > edges.back()) edges.push_back(v);
  }
  if (edges.size() == 1) edges.push_back(edges.front());
  return edges;
}

DesignMatrix build_design(const std::vector<harness::ScoreRow>& rows, const DesignSpec& spec) {
  DesignMatrix X;
  std::vector<const harness::ScoreRow*> kept;
  for (const auto& r : rows) {
    if (spec.task_code && to_string(r.task_code) != *spec.task_code) continue;
    bool ok = !r.flagged;
    for (const auto& p : spec.predictors) ok = ok && r.features.count(p.feature);
    if (ok) kept.push_back(&r);
    else ++X.dropped_rows;
  }
  for (const auto* r : kept)
    X.y.push_back(spec.response == "score" ? r->score.score : (r->score.correct ? 1.0 : 0.0));

  std::vector<std::vector<double>> cols;
  for (const auto& p : spec.predictors) {
    std::vector<double> v;
    for (const auto* r : kept) v.push_back(r->features.at(p.feature));
    const int g = static_cast<int>(X.groups.size());
    std::vector<std::pair<std::string, std::vector<double>>> made;
    if (p.kind == PredictorKind::kNumeric) {
      made.emplace_back(p.name, std::move(v));
    } else {
      std::vector<double> edges = p.edges.empty() ? quantile_edges(v, p.quantiles) : p.edges;
      if (edges.size() < 2) continue;
      std::vector<std::size_t> bin;
      std::size_t outside = 0;
      for (double x : v) {
        bin.push_back(bin_index(edges, x));
        outside += x < edges.front() || x > edges.back();
      }
      if (outside)
        X.warnings.push_back(fmt::format("{}: {} values outside the bin edges were clamped",
                                         p.name, outside));
      std::set<std::size_t> used(bin.begin(), bin.end());
      // First occupied bin is the reference level.
      for (auto it = std::next(used.begin(), used.empty() ? 0 : 1); it != used.end(); ++it) {
        std::vector<double> ind;
        for (auto b : bin) ind.push_back(b == *it ? 1.0 : 0.0);
        made.emplace_back(fmt::format("{}[{:g},{:g})", p.name, edges[*it], edges[*it + 1]),
                          std::move(ind));
      }
    }
    bool any = false;
    for (auto& [name, c] : made) {
      bool constant = std::all_of(c.begin(), c.end(), [&](double x) { return x == c.front(); });
      if (constant) {
        X.warnings.push_back("dropped constant column " + name);
        continue;
      }
      X.columns.push_back(name);
      X.group_of.push_back(g);
      cols.push_back(std::move(c));
      any = true;
    }
    if (any) X.groups.push_back(p.name);
    else X.warnings.push_back("dropped predictor group " + p.name + " (no varying column)");
  }
  X.x.assign(kept.size(), std::vector<double>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (std::size_t i = 0; i < kept.size(); ++i) X.x[i][c] = cols[c][i];
  return X;
}

}  // namespace rel::analysis
