#include "rel/harness/evaluate.hpp"

#include <atomic>
#include <mutex>
#include <thread>
#include <unordered_map>

#include "rel/core/dataset.hpp"
#include "rel/core/error.hpp"
#include "rel/harness/prompt.hpp"

namespace rel::harness {

Json record_to_json(const RunRecord& r) {
  Json j = {{"instance_id", r.instance_id},
            {"task_code", std::string(to_string(r.task_code))},
            {"sample", r.sample},
            {"raw", r.raw},
            {"errored", r.errored},
            {"attempts", r.attempts},
            {"latency_s", r.latency_s},
            {"usage", r.usage},
            {"score", score_to_json(r.score)}};
  if (r.errored) j["error"] = r.error;
  return j;
}

RunRecord record_from_json(const Json& j) {
  RunRecord r;
  r.instance_id = j.at("instance_id").get<std::string>();
  r.task_code = parse_task_code(j.at("task_code").get<std::string>());
  r.sample = j.at("sample").get<int>();
  r.raw = j.value("raw", "");
  r.errored = j.value("errored", false);
  r.error = j.value("error", "");
  r.attempts = j.value("attempts", 0);
  r.latency_s = j.value("latency_s", 0.0);
  r.usage = j.value("usage", Json(nullptr));
  if (auto s = j.find("score"); s != j.end() && s->is_object()) r.score = score_from_json(*s);
  return r;
}

std::vector<RunRecord> load_records(const std::string& path) {
  std::vector<RunRecord> out;
  for (const Json& j : read_jsonl(path)) out.push_back(record_from_json(j));
  return out;
}

void save_records(const std::string& path, const std::vector<RunRecord>& records) {
  std::vector<Json> rows;
  rows.reserve(records.size());
  for (const auto& r : records) rows.push_back(record_to_json(r));
  write_jsonl(rows, path);
}

double EvalOptions::effective_temperature() const {
  if (temperature) return *temperature;
  return n_samples > 1 ? 1.0 : 0.0;
}

std::string prompt_for(const std::vector<TaskInstance>& dataset, std::size_t i,
                       const EvalOptions& opts) {
  PromptOptions po;
  po.structured = opts.structured;
  if (opts.icl_shots > 0) {
    int j = icl_partner(dataset, i);
    if (j < 0)
      throw ParameterError("no ICL example available for " + dataset[i].id + " (task " +
                           std::string(to_string(dataset[i].task_code)) +
                           " occurs once in the dataset)");
    po.icl_example = &dataset[j];
  }
  return render_prompt(dataset[i], po);
}

std::vector<RunRecord> evaluate_run(const std::vector<TaskInstance>& dataset,
                                    const ModelCaller& model, const EvalOptions& opts,
                                    const RecordSink& sink) {
  if (opts.n_samples < 1) throw ParameterError("evaluate: samples must be >= 1");
  if (opts.icl_shots < 0 || opts.icl_shots > 1)
    throw ParameterError("evaluate: only 0 or 1 ICL shots are supported");
  if (opts.parallel < 1) throw ParameterError("evaluate: parallelism must be >= 1");

  // Render everything up front so bad options fail before any call is made.
  std::vector<std::string> prompts;
  prompts.reserve(dataset.size());
  for (std::size_t i = 0; i < dataset.size(); ++i) prompts.push_back(prompt_for(dataset, i, opts));

  const std::size_t n = static_cast<std::size_t>(opts.n_samples);
  const std::size_t total = dataset.size() * n;
  const double temperature = opts.effective_temperature();
  std::vector<RunRecord> out(total);
  std::atomic<std::size_t> next{0};
  std::mutex sink_mu;

  auto worker = [&] {
    for (;;) {
      const std::size_t job = next.fetch_add(1);
      if (job >= total) return;
      const TaskInstance& inst = dataset[job / n];
      RunRecord r;
      r.instance_id = inst.id;
      r.task_code = inst.task_code;
      r.sample = static_cast<int>(job % n);
      CallResult c;
      try {
        c = model(prompts[job / n], temperature);
      } catch (const std::exception& e) {
        c.ok = false;
        c.error = std::string("caller threw: ") + e.what();
      }
      r.attempts = c.attempts;
      r.latency_s = c.latency_s;
      r.usage = c.usage;
      if (c.ok) {
        r.raw = std::move(c.text);
        r.score = score_response(inst, r.raw);
      } else {
        r.errored = true;
        r.error = c.error.empty() ? "unknown error" : c.error;
      }
      if (sink) {
        std::lock_guard lock(sink_mu);
        sink(r);
      }
      out[job] = std::move(r);
    }
  };

  const std::size_t n_threads =
      std::min<std::size_t>(static_cast<std::size_t>(opts.parallel), std::max<std::size_t>(total, 1));
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return out;
}

void rescore(const std::vector<TaskInstance>& dataset, std::vector<RunRecord>& records) {
  std::unordered_map<std::string, const TaskInstance*> by_id;
  for (const auto& inst : dataset) by_id.emplace(inst.id, &inst);
  for (auto& r : records) {
    auto it = by_id.find(r.instance_id);
    if (it == by_id.end())
      throw IntegrityError("response for unknown instance " + r.instance_id);
    if (it->second->task_code != r.task_code)
      throw IntegrityError("response for " + r.instance_id + " has the wrong task code");
    r.score = r.errored ? ScoreResult{} : score_response(*it->second, r.raw);
  }
}

}  // namespace rel::harness
