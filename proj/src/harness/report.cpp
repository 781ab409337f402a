#include "rel/harness/report.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>

#include <fmt/format.h>

#include "rel/core/dataset.hpp"
#include "rel/core/error.hpp"
#include "rel/core/text.hpp"

namespace rel::harness {

Json row_to_json(const ScoreRow& r) {
  Json f = Json::object();
  for (const auto& [k, v] : r.features) f[k] = v;
  return {{"instance_id", r.instance_id},
          {"task_code", std::string(to_string(r.task_code))},
          {"rc", r.rc},
          {"aggregate", r.aggregate},
          {"n_samples", r.n_samples},
          {"n_present", r.n_present},
          {"n_errored", r.n_errored},
          {"flagged", r.flagged},
          {"score", r.score.score},
          {"correct", r.score.correct},
          {"parsed", r.score.parsed},
          {"answer", r.score.answer},
          {"detail", r.score.detail},
          {"features", f}};
}

ScoreRow row_from_json(const Json& j) {
  ScoreRow r;
  r.instance_id = j.at("instance_id").get<std::string>();
  r.task_code = parse_task_code(j.at("task_code").get<std::string>());
  r.rc = j.at("rc").get<int>();
  r.aggregate = j.value("aggregate", "single");
  r.n_samples = j.value("n_samples", 1);
  r.n_present = j.value("n_present", 1);
  r.n_errored = j.value("n_errored", 0);
  r.flagged = j.value("flagged", false);
  r.score.score = j.at("score").get<double>();
  r.score.correct = j.value("correct", false);
  r.score.parsed = j.value("parsed", false);
  r.score.answer = j.value("answer", Json(nullptr));
  r.score.detail = j.value("detail", Json::object());
  if (auto f = j.find("features"); f != j.end()) {
    for (auto it = f->begin(); it != f->end(); ++it) {
      if (it.value().is_number()) r.features[it.key()] = it.value().get<double>();
    }
  }
  return r;
}

std::vector<ScoreRow> load_score_rows(const std::string& path) {
  std::vector<ScoreRow> out;
  std::size_t line = 0;
  for (const Json& j : read_jsonl(path)) {
    ++line;
    try {
      out.push_back(row_from_json(j));
    } catch (const Json::exception& e) {
      throw SchemaError(line, path + ": bad score row: " + e.what());
    }
  }
  return out;
}

void save_score_rows(const std::string& path, const std::vector<ScoreRow>& rows) {
  std::vector<Json> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(row_to_json(r));
  write_jsonl(out, path);
}

std::map<std::string, double> instance_features(const TaskInstance& inst) {
  std::map<std::string, double> f;
  for (auto it = inst.gen_params.begin(); it != inst.gen_params.end(); ++it) {
    const Json& v = it.value();
    if (v.is_number()) f[it.key()] = v.get<double>();
    else if (v.is_boolean()) f[it.key()] = v.get<bool>() ? 1.0 : 0.0;
  }
  for (const auto& [k, v] : inst.oc_params) f[k] = v;
  f["rc"] = inst.rc;
  return f;
}

std::vector<ScoreRow> make_score_rows(const std::vector<TaskInstance>& dataset,
                                      const std::vector<AggregateResult>& results,
                                      const AggregationPolicy& policy) {
  if (dataset.size() != results.size())
    throw IntegrityError("aggregate results do not line up with the dataset");
  std::vector<ScoreRow> rows;
  rows.reserve(dataset.size());
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    const auto& inst = dataset[i];
    const auto& a = results[i];
    if (a.instance_id != inst.id) throw IntegrityError("aggregate order mismatch at " + inst.id);
    ScoreRow r;
    r.instance_id = inst.id;
    r.task_code = inst.task_code;
    r.rc = inst.rc;
    r.aggregate = std::string(to_string(policy.mode));
    r.n_samples = policy.n;
    r.n_present = a.n_present;
    r.n_errored = a.n_errored;
    r.flagged = a.flagged;
    r.score = a.score;
    r.features = instance_features(inst);
    rows.push_back(std::move(r));
  }
  return rows;
}

namespace {

struct Bins {
  std::string feature;
  std::vector<double> edges;  // ascending; last bin is [edges.back(), inf)
  std::function<std::string(double, double)> label;
};

std::string pct(double lo, double hi) {
  if (std::isinf(hi)) return fmt::format(">={:g}%", lo * 100);
  return fmt::format("{:g}-{:g}%", lo * 100, hi * 100);
}

std::string range(double lo, double hi) {
  if (std::isinf(hi)) return fmt::format(">={:g}", lo);
  return fmt::format("{:g}-{:g}", lo, hi);
}

const std::map<std::string, Bins>& binned_keys() {
  static const std::map<std::string, Bins> keys = {
      {"motif_ratio_bin",
       {"motif_ratio", {0, .05, .10, .125, .15, .175, .20, .225, .25, .30}, pct}},
      {"prompt_len_bin",
       {"prompt_chars", {0, 2000, 4000, 8000, 16000, 32000, 64000, 128000}, range}},
      {"distance_bin", {"mean_distance", {0, 5, 7, 9, 11, 13, 15}, range}},
  };
  return keys;
}

// Sort key: numeric labels sort numerically, everything else lexically.
struct Label {
  std::string text;
  double order = 0;
  bool numeric = false;
  bool operator<(const Label& o) const {
    if (numeric != o.numeric) return numeric;
    if (numeric && order != o.order) return order < o.order;
    return text < o.text;
  }
};

std::string int_or_g(double v) {
  if (v == std::floor(v) && std::abs(v) < 1e15) return fmt::format("{}", static_cast<long long>(v));
  return fmt::format("{:g}", v);
}

std::optional<Label> label_of(const ScoreRow& r, const std::string& key) {
  if (key == "all") return Label{"all", 0, true};
  if (key == "task_code")
    return Label{std::string(to_string(r.task_code)), static_cast<double>(r.task_code), true};
  if (key == "domain") return Label{std::string(to_string(domain_of(r.task_code)))};
  if (key == "rc") return Label{std::to_string(r.rc), static_cast<double>(r.rc), true};
  if (auto b = binned_keys().find(key); b != binned_keys().end()) {
    auto f = r.features.find(b->second.feature);
    if (f == r.features.end()) return std::nullopt;
    const auto& e = b->second.edges;
    if (f->second < e.front()) return std::nullopt;
    std::size_t k = std::upper_bound(e.begin(), e.end(), f->second) - e.begin() - 1;
    double hi = k + 1 < e.size() ? e[k + 1] : std::numeric_limits<double>::infinity();
    return Label{b->second.label(e[k], hi), static_cast<double>(k), true};
  }
  auto f = r.features.find(key);
  if (f == r.features.end()) return std::nullopt;
  return Label{int_or_g(f->second), f->second, true};
}

StratumRow summarize(const std::string& key, const std::string& value,
                     const std::vector<const ScoreRow*>& rows) {
  StratumRow s;
  s.key = key;
  s.value = value;
  s.n = rows.size();
  if (rows.empty()) return s;
  double sum = 0, correct = 0;
  for (const auto* r : rows) {
    sum += r->score.score;
    correct += r->score.correct ? 1 : 0;
  }
  const double n = static_cast<double>(s.n);
  s.mean = sum / n;
  s.accuracy = correct / n;
  if (s.n > 1) {
    double ss = 0;
    for (const auto* r : rows) ss += (r->score.score - s.mean) * (r->score.score - s.mean);
    s.se = std::sqrt(ss / (n - 1) / n);
  }
  return s;
}

}  // namespace

const std::vector<std::string>& default_strata() {
  static const std::vector<std::string> keys = {
      "all",          "task_code",       "rc",             "task_code+rc",
      "n_molecules",  "task_code+n_molecules", "motif_ratio_bin", "prompt_len_bin",
      "distance_bin"};
  return keys;
}

std::vector<StratumRow> stratified_report(const std::vector<ScoreRow>& rows,
                                          const std::vector<std::string>& keys) {
  std::vector<StratumRow> out;
  for (const std::string& key : keys) {
    const auto parts = split(key, '+');
    std::map<std::vector<Label>, std::vector<const ScoreRow*>> groups;
    for (const auto& r : rows) {
      if (r.flagged) continue;
      std::vector<Label> labels;
      for (const auto& p : parts) {
        auto l = label_of(r, std::string(trim(p)));
        if (!l) break;
        labels.push_back(*l);
      }
      if (labels.size() == parts.size()) groups[labels].push_back(&r);
    }
    // A single binned key lists every bin, empty ones included.
    if (parts.size() == 1) {
      if (auto b = binned_keys().find(key); b != binned_keys().end()) {
        const auto& e = b->second.edges;
        for (std::size_t k = 0; k < e.size(); ++k) {
          double hi = k + 1 < e.size() ? e[k + 1] : std::numeric_limits<double>::infinity();
          groups.try_emplace({Label{b->second.label(e[k], hi), static_cast<double>(k), true}});
        }
      }
    }
    if (groups.empty()) out.push_back(summarize(key, "-", {}));
    for (const auto& [labels, members] : groups) {
      std::vector<std::string> texts;
      for (const auto& l : labels) texts.push_back(l.text);
      out.push_back(summarize(key, join(texts, "/"), members));
    }
  }
  return out;
}

namespace {

std::vector<std::vector<std::string>> cells(const std::vector<StratumRow>& report) {
  std::vector<std::vector<std::string>> t;
  t.push_back({"stratum", "value", "n", "mean", "se", "accuracy"});
  for (const auto& s : report) {
    if (s.n == 0) {
      t.push_back({s.key, s.value, "0", "NA", "NA", "NA"});
    } else {
      t.push_back({s.key, s.value, std::to_string(s.n), format_fixed(s.mean, 6),
                   format_fixed(s.se, 6), format_fixed(s.accuracy, 6)});
    }
  }
  return t;
}

}  // namespace

std::string report_tsv(const std::vector<StratumRow>& report) {
  std::string out;
  for (const auto& row : cells(report)) out += join(row, "\t") + "\n";
  return out;
}

std::string report_text(const std::vector<StratumRow>& report) {
  auto t = cells(report);
  std::vector<std::size_t> w(t.front().size(), 0);
  for (const auto& row : t)
    for (std::size_t c = 0; c < row.size(); ++c) w[c] = std::max(w[c], row[c].size());
  std::string out;
  for (std::size_t i = 0; i < t.size(); ++i) {
    std::string line;
    for (std::size_t c = 0; c < t[i].size(); ++c) {
      const bool left = c < 2;
      std::string cell = t[i][c];
      std::string pad(w[c] - cell.size(), ' ');
      line += left ? cell + pad : pad + cell;
      if (c + 1 < t[i].size()) line += "  ";
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line + "\n";
    if (i == 0) {
      std::size_t total = 0;
      for (auto x : w) total += x;
      out += std::string(total + 2 * (w.size() - 1), '-') + "\n";
    }
  }
  return out;
}

}  // namespace rel::harness
