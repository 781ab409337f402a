#include <cstdlib>
#include <filesystem>
#include <set>

#include "doctest.h"
#include "harness_cases.hpp"
#include "published.hpp"
#include "rel/core/dataset.hpp"
#include "rel/core/error.hpp"
#include "rel/harness/aggregate.hpp"
#include "rel/harness/endpoint.hpp"
#include "rel/harness/evaluate.hpp"
#include "rel/harness/prompt.hpp"
#include "rel/harness/report.hpp"
#include "rel/phylo/b1.hpp"
#include "stub_server.hpp"

using namespace rel;
using namespace rel::harness;

namespace {

EndpointConfig stub_config(const std::string& url) {
  EndpointConfig cfg;
  cfg.base_url = url;
  cfg.model = "stub";
  cfg.max_tokens = 64;
  cfg.timeout_s = 5;
  cfg.retry.retries = 3;
  cfg.retry.backoff_s = 0.01;
  return cfg;
}

ModelCaller fixed(const std::string& text) {
  return [text](const std::string&, double) {
    CallResult r;
    r.ok = true;
    r.text = text;
    r.attempts = 1;
    return r;
  };
}

std::vector<TaskInstance> b1_batch(int n) {
  std::vector<TaskInstance> out;
  phylo::B1Params p;
  p.n_leaves = 10;
  p.l_seq = 60;
  p.l_motif = 6;
  for (int i = 0; i < n; ++i) out.push_back(phylo::gen_b1(p, SeededRng(80).split(i)));
  return out;
}

const std::vector<TaskInstance>& mixed() {
  static auto data = fixtures::mixed_dataset(REL_SOURCE_DIR);
  return data;
}

}  // namespace

TEST_CASE("structured scaffold on B1 only") {
  auto inst = b1_batch(1)[0];
  PromptOptions o;
  o.structured = true;
  auto p = render_prompt(inst, o);
  auto step = p.find("Step 1 — Motif scanning");
  REQUIRE(step != std::string::npos);
  CHECK(step < p.find(phylo::kB1ReturnSentence));
  CHECK(p.find("You MUST follow these steps in order") != std::string::npos);
  CHECK(render_prompt(inst) == inst.prompt);
  CHECK_THROWS_AS(render_prompt(fixtures::a1_example(), o), ParameterError);
}

TEST_CASE("one-shot example precedes the question") {
  const auto& data = mixed();
  std::vector<std::size_t> c1;
  for (std::size_t i = 0; i < data.size(); ++i)
    if (data[i].task_code == TaskCode::C1) c1.push_back(i);
  REQUIRE(c1.size() == 2);
  PromptOptions o;
  o.icl_example = &data[c1[1]];
  auto p = render_prompt(data[c1[0]], o);
  auto ex = p.find(data[c1[1]].prompt);
  auto q = p.rfind(data[c1[0]].prompt);
  REQUIRE(ex != std::string::npos);
  REQUIRE(q != std::string::npos);
  CHECK(ex < q);
  CHECK(p.find(reference_response(data[c1[1]])) < q);
  CHECK(p.find("### Example answer") != std::string::npos);
  CHECK(icl_partner(data, c1[0]) == static_cast<int>(c1[1]));
  CHECK(icl_partner(data, c1[1]) == static_cast<int>(c1[0]));

  o.icl_example = &data[0];
  CHECK_THROWS_AS(render_prompt(data[c1[0]], o), ParameterError);
  o.icl_example = &data[c1[0]];
  CHECK_THROWS_AS(render_prompt(data[c1[0]], o), ParameterError);
  CHECK(icl_partner({data[c1[0]]}, 0) == -1);
}

TEST_CASE("stub endpoint answer becomes a record") {
  fixtures::StubServer stub([](const Json& body, int) {
    CHECK(body.at("model") == "stub");
    CHECK(body.at("messages")[0].at("role") == "user");
    return fixtures::StubReply{200, "761"};
  });
  setenv("REL_API_KEY", "secret-token", 1);
  auto cfg = stub_config(stub.url());
  auto runs = evaluate_run({fixtures::a1_example()}, http_caller(cfg), {});
  REQUIRE(runs.size() == 1);
  CHECK(runs[0].raw == "761");
  CHECK_FALSE(runs[0].errored);
  CHECK(runs[0].score.correct);
  CHECK(runs[0].usage.at("completion_tokens") == 2);
  CHECK(stub.last_auth() == "Bearer secret-token");
  cfg.api_key = "other";
  call_model(cfg, "hi", 0);
  CHECK(stub.last_auth() == "Bearer other");
  unsetenv("REL_API_KEY");
}

TEST_CASE("server errors are retried") {
  fixtures::StubServer stub([](const Json&, int call) {
    if (call <= 2) return fixtures::StubReply{500, ""};
    return fixtures::StubReply{200, "ok"};
  });
  auto r = call_model(stub_config(stub.url()), "x", 0);
  CHECK(r.ok);
  CHECK(r.text == "ok");
  CHECK(r.attempts == 3);
  CHECK(stub.calls() == 3);
}

TEST_CASE("rate limits retry, auth and bad bodies do not") {
  {
    fixtures::StubServer stub([](const Json&, int call) {
      return call == 1 ? fixtures::StubReply{429, ""} : fixtures::StubReply{200, "fine"};
    });
    auto r = call_model(stub_config(stub.url()), "x", 0);
    CHECK(r.ok);
    CHECK(r.attempts == 2);
  }
  {
    fixtures::StubServer stub([](const Json&, int) { return fixtures::StubReply{401, ""}; });
    auto r = call_model(stub_config(stub.url()), "x", 0);
    CHECK_FALSE(r.ok);
    CHECK(r.attempts == 1);
    CHECK(r.http_status == 401);
  }
  {
    fixtures::StubServer stub([](const Json&, int) {
      fixtures::StubReply r;
      r.raw_body = "{\"nothing\": true}";
      return r;
    });
    auto r = call_model(stub_config(stub.url()), "x", 0);
    CHECK_FALSE(r.ok);
    CHECK(r.attempts == 1);
    CHECK(r.error.find("malformed") != std::string::npos);
  }
  {
    fixtures::StubServer stub([](const Json&, int) {
      fixtures::StubReply r;
      r.raw_body = R"({"choices": [{"message": {"content": null}}]})";
      return r;
    });
    auto r = call_model(stub_config(stub.url()), "x", 0);
    CHECK(r.ok);
    CHECK(r.text.empty());
  }
}

TEST_CASE("a timed-out call becomes an errored record and the run continues") {
  fixtures::StubServer stub([](const Json& body, int) {
    std::string prompt = body.at("messages")[0].at("content");
    fixtures::StubReply r{200, "761"};
    if (prompt.find("633") != std::string::npos) r.delay_s = 1.5;
    return r;
  });
  auto cfg = stub_config(stub.url());
  cfg.timeout_s = 0.3;
  cfg.retry.retries = 1;
  auto slow = fixtures::a1_example();
  auto fast = fixtures::a4_example();
  auto runs = evaluate_run({slow, fast}, http_caller(cfg), {});
  REQUIRE(runs.size() == 2);
  CHECK(runs[0].errored);
  CHECK(runs[0].attempts == 2);
  CHECK(runs[0].score.score == 0.0);
  CHECK_FALSE(runs[0].score.correct);
  CHECK_FALSE(runs[1].errored);
  CHECK(runs[1].raw == "761");
}

TEST_CASE("no record loss and deterministic order") {
  auto data = b1_batch(15);
  EvalOptions o;
  o.n_samples = 5;
  o.parallel = 4;
  std::atomic<int> sunk{0};
  auto runs = evaluate_run(data, fixed("No"), o, [&](const RunRecord&) { ++sunk; });
  REQUIRE(runs.size() == 75);
  CHECK(sunk == 75);
  for (std::size_t i = 0; i < runs.size(); ++i) {
    CHECK(runs[i].instance_id == data[i / 5].id);
    CHECK(runs[i].sample == static_cast<int>(i % 5));
  }
  CHECK(evaluate_run({}, fixed("No"), o).empty());
  CHECK(o.effective_temperature() == 1.0);
  CHECK(EvalOptions{}.effective_temperature() == 0.0);

  // A throwing caller still yields records.
  auto boom = [](const std::string&, double) -> CallResult { throw std::runtime_error("boom"); };
  auto errs = evaluate_run(data, boom, o);
  CHECK(errs.size() == 75);
  for (const auto& r : errs) CHECK(r.errored);
}

TEST_CASE("mixed datasets route to each scorer") {
  const auto& data = mixed();
  EvalOptions o;
  fixtures::ScriptedModel model(data, o);
  auto caller = [&](const std::string& p, double) {
    CallResult r;
    r.ok = true;
    r.text = model.reply(p);
    return r;
  };
  auto runs = evaluate_run(data, caller, o);
  REQUIRE(runs.size() == data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    bool ref = runs[i].raw == reference_response(data[i]);
    INFO(to_string(data[i].task_code), " ", runs[i].raw);
    CHECK(runs[i].task_code == data[i].task_code);
    if (ref) {
      CHECK(runs[i].score.correct);
      CHECK(runs[i].score.score == 1.0);
    } else {
      CHECK(runs[i].score.score < 1.0);
    }
  }
}

TEST_CASE("records round-trip and rescoring is stable") {
  const auto& data = mixed();
  EvalOptions o;
  o.n_samples = 2;
  fixtures::ScriptedModel model(data, {});
  auto runs = evaluate_run(
      data,
      [&](const std::string& p, double) {
        CallResult r;
        r.ok = true;
        r.text = model.reply(p);
        return r;
      },
      o);
  auto path = (std::filesystem::temp_directory_path() / "rel_runs.jsonl").string();
  save_records(path, runs);
  auto back = load_records(path);
  REQUIRE(back.size() == runs.size());
  auto rescored = back;
  rescore(data, rescored);
  for (std::size_t i = 0; i < runs.size(); ++i) {
    CHECK(record_to_json(back[i]) == record_to_json(runs[i]));
    CHECK(score_to_json(rescored[i].score) == score_to_json(runs[i].score));
  }
  auto bad = back;
  bad[0].instance_id = "nope";
  CHECK_THROWS_AS(rescore(data, bad), IntegrityError);
}

TEST_CASE("majority vote rebuilds taxa element-wise") {
  auto inst = fixtures::b1_vote_instance();
  auto recs = fixtures::records_for(inst, fixtures::b1_vote_samples());
  auto res = aggregate({inst}, recs, {AggMode::kMajorityVote, 5});
  REQUIRE(res.size() == 1);
  CHECK(res[0].score.correct);
  CHECK(res[0].score.answer.at("taxa") == Json::array({"3", "46"}));

  // 46 in only 2 of 5 drops out.
  auto recs2 =
      fixtures::records_for(inst, {"Yes: 3, 46", "Yes: 3", "Yes: 3", "Yes: 3", "Yes: 46"});
  auto r2 = aggregate({inst}, recs2, {AggMode::kMajorityVote, 5});
  CHECK_FALSE(r2[0].score.correct);
  CHECK(r2[0].score.answer.at("taxa") == Json::array({"3"}));
}

TEST_CASE("best-of-n and single") {
  auto inst = fixtures::b1_vote_instance();
  auto recs = fixtures::records_for(inst, {"Yes: 3", "No", "Yes: 3, 46", "Yes: 46", "No"});
  CHECK(aggregate({inst}, recs, {AggMode::kBestOfN, 5})[0].score.correct);
  auto single = fixtures::records_for(inst, {"Yes: 3"});
  auto s = aggregate({inst}, single, {AggMode::kSingle, 1});
  CHECK(score_to_json(s[0].score) == score_to_json(single[0].score));

  // Modal answer on a choice task; a tie scores zero.
  auto a1 = fixtures::a1_example();
  auto tie = fixtures::records_for(a1, {"761", "769", "761", "769"});
  CHECK_FALSE(aggregate({a1}, tie, {AggMode::kMajorityVote, 4})[0].score.correct);
  auto win = fixtures::records_for(a1, {"761", "769", "761"});
  CHECK(aggregate({a1}, win, {AggMode::kMajorityVote, 3})[0].score.correct);
}

TEST_CASE("missing and duplicate samples") {
  auto inst = fixtures::b1_vote_instance();
  auto recs = fixtures::records_for(inst, {"Yes: 3, 46", "Yes: 3, 46"});
  auto res = aggregate({inst}, recs, {AggMode::kBestOfN, 3});
  CHECK(res[0].flagged);
  CHECK(res[0].n_present == 2);
  recs.push_back(recs[0]);
  CHECK_THROWS_AS(aggregate({inst}, recs, {AggMode::kBestOfN, 3}), IntegrityError);
  CHECK_THROWS(AggregationPolicy{AggMode::kBestOfN, 1}.validate());
  CHECK_THROWS(AggregationPolicy{AggMode::kSingle, 0}.validate());
  CHECK(parse_agg_mode("best") == AggMode::kBestOfN);
  CHECK(parse_agg_mode("majority") == AggMode::kMajorityVote);
}

TEST_CASE("best-of-n dominates the first sample") {
  const auto& data = mixed();
  std::vector<RunRecord> recs;
  SeededRng rng(90);
  for (const auto& inst : data) {
    std::vector<std::string> texts;
    for (int s = 0; s < 4; ++s)
      texts.push_back(rng.bernoulli(0.5) ? reference_response(inst)
                                         : fixtures::ScriptedModel::wrong_answer(inst));
    auto r = fixtures::records_for(inst, texts);
    recs.insert(recs.end(), r.begin(), r.end());
  }
  auto single = aggregate(data, recs, {AggMode::kSingle, 4});
  auto best = aggregate(data, recs, {AggMode::kBestOfN, 4});
  for (std::size_t i = 0; i < data.size(); ++i) CHECK(best[i].score.score >= single[i].score.score);
}

TEST_CASE("report values match a direct recomputation") {
  const auto& data = mixed();
  std::vector<RunRecord> recs;
  for (const auto& inst : data) {
    auto r = fixtures::records_for(inst, {fixtures::ScriptedModel::wrong_answer(inst)});
    if (fnv1a64(inst.id) % 3 == 0) r = fixtures::records_for(inst, {reference_response(inst)});
    recs.insert(recs.end(), r.begin(), r.end());
  }
  AggregationPolicy pol;
  auto rows = make_score_rows(data, aggregate(data, recs, pol), pol);
  auto rep = stratified_report(rows, {"all", "task_code", "rc", "task_code+rc"});
  for (const auto& s : rep) {
    double sum = 0;
    std::size_t n = 0;
    for (const auto& r : rows) {
      bool in = s.key == "all" ||
                (s.key == "task_code" && std::string(to_string(r.task_code)) == s.value) ||
                (s.key == "rc" && std::to_string(r.rc) == s.value) ||
                (s.key == "task_code+rc" &&
                 std::string(to_string(r.task_code)) + "/" + std::to_string(r.rc) == s.value);
      if (!in) continue;
      sum += r.score.score;
      ++n;
    }
    INFO(s.key, "=", s.value);
    CHECK(s.n == n);
    CHECK(s.mean == (n ? sum / static_cast<double>(n) : 0.0));
  }
  auto tsv = report_tsv(rep);
  CHECK(tsv.rfind("stratum\tvalue\tn\tmean\tse\taccuracy\n", 0) == 0);
  CHECK_FALSE(report_text(rep).empty());
}

TEST_CASE("all-correct rows give mean 1 and se 0") {
  const auto& data = mixed();
  std::vector<RunRecord> recs;
  for (const auto& inst : data) {
    auto r = fixtures::records_for(inst, {reference_response(inst)});
    recs.insert(recs.end(), r.begin(), r.end());
  }
  AggregationPolicy pol;
  auto rows = make_score_rows(data, aggregate(data, recs, pol), pol);
  for (const auto& s : stratified_report(rows, default_strata())) {
    if (s.n == 0) continue;
    CHECK(s.mean == 1.0);
    CHECK(s.se == 0.0);
  }
  // Binned keys list empty bins too.
  auto bins = stratified_report(rows, {"motif_ratio_bin"});
  bool empty = false;
  for (const auto& s : bins) empty = empty || s.n == 0;
  CHECK(empty);
  CHECK(report_tsv(bins).find("NA") != std::string::npos);
}

TEST_CASE("random responder on algebra and B2") {
  std::vector<TaskInstance> data;
  auto a = generate_tasks(TaskCode::A2, {{"count", 2000}}, 11, REL_SOURCE_DIR);
  SeededRng rng(12);
  std::vector<RunRecord> recs;
  for (const auto& inst : a) {
    const auto& c = std::get<ChoiceIndex>(inst.answer);
    auto r = fixtures::records_for(inst, {std::to_string(c.candidates[rng.uniform_index(8)])});
    recs.insert(recs.end(), r.begin(), r.end());
  }
  AggregationPolicy pol;
  auto rows = make_score_rows(a, aggregate(a, recs, pol), pol);
  auto rep = stratified_report(rows, {"all"});
  CHECK(std::abs(rep[0].mean - 0.125) < 0.03);
}
