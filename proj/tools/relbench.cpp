// Command-line front end: generate, evaluate, score, report, analyze, pool.

#include <CLI11.hpp>
#include <fmt/format.h>

#include <cstdio>
#include <filesystem>
#include <iostream>

#include "rel/analysis/design.hpp"
#include "rel/analysis/ols.hpp"
#include "rel/chem/bank.hpp"
#include "rel/chem/element.hpp"
#include "rel/core/dataset.hpp"
#include "rel/core/error.hpp"
#include "rel/core/text.hpp"
#include "rel/harness/aggregate.hpp"
#include "rel/harness/endpoint.hpp"
#include "rel/harness/evaluate.hpp"
#include "rel/harness/generate.hpp"
#include "rel/harness/report.hpp"

using namespace rel;

namespace {

Json read_params(const std::string& arg) {
  std::string text = trim(arg).starts_with("{") ? arg : read_file(arg);
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ParseError("parameters are not valid JSON: " + arg);
  return j;
}

void write_or_print(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") std::cout << text;
  else write_file(path, text);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Relational-complexity benchmark: generate tasks, run models, score and analyze"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "Generate a task dataset as JSONL");
  std::string g_task, g_params = "{}", g_out, g_base = ".";
  std::uint64_t g_seed = 0;
  gen->add_option("--task", g_task, "Task code (A1-A7, B1, B2, C1-C4)")->required();
  gen->add_option("--params", g_params, "Parameter JSON file or inline JSON object");
  gen->add_option("--seed", g_seed, "Root seed")->required();
  gen->add_option("--out", g_out, "Output JSONL path")->required();
  gen->add_option("--base-dir", g_base, "Directory that relative data paths resolve against");

  // evaluate
  auto* ev = app.add_subcommand("evaluate", "Query a chat-completion endpoint for every instance");
  std::string e_dataset, e_endpoint, e_model, e_out, e_agg = "single";
  int e_max_tokens = 4096, e_icl = 0, e_samples = 1, e_parallel = 4, e_retries = 3;
  double e_timeout = 600, e_backoff = 2.0;
  std::optional<double> e_temp;
  bool e_structured = false;
  ev->add_option("--dataset", e_dataset)->required();
  ev->add_option("--endpoint", e_endpoint, "Base URL, e.g. http://localhost:8000/v1")->required();
  ev->add_option("--model", e_model)->required();
  ev->add_option("--max-tokens", e_max_tokens)->required()->check(CLI::PositiveNumber);
  ev->add_option("--icl-shots", e_icl, "0 or 1 solved examples")->check(CLI::Range(0, 1));
  ev->add_option("--samples", e_samples)->check(CLI::PositiveNumber);
  ev->add_option("--aggregate", e_agg, "single, best or majority (recorded for scoring)");
  ev->add_option("--temperature", e_temp, "Default 1.0 with samples > 1, else 0");
  ev->add_flag("--structured", e_structured, "Step-by-step scaffold (B1)");
  ev->add_option("--parallel", e_parallel, "Max requests in flight")->check(CLI::PositiveNumber);
  ev->add_option("--timeout", e_timeout, "Request timeout in seconds");
  ev->add_option("--retries", e_retries)->check(CLI::NonNegativeNumber);
  ev->add_option("--backoff", e_backoff, "Seconds before the first retry")
      ->check(CLI::NonNegativeNumber);
  ev->add_option("--out", e_out, "Responses JSONL (default: <dataset>.responses.jsonl)");

  // score
  auto* sc = app.add_subcommand("score", "Score saved responses and aggregate samples");
  std::string s_dataset, s_responses, s_out, s_agg;
  int s_samples = 0;
  sc->add_option("--dataset", s_dataset)->required();
  sc->add_option("--responses", s_responses)->required();
  sc->add_option("--out", s_out)->required();
  sc->add_option("--aggregate", s_agg, "Override the policy stored in the responses");
  sc->add_option("--samples", s_samples, "Override the sample count stored in the responses");

  // report
  auto* rp = app.add_subcommand("report", "Stratified mean score table");
  std::string r_scores, r_tsv;
  std::vector<std::string> r_strata;
  rp->add_option("--scores", r_scores)->required();
  rp->add_option("--strata", r_strata, "Keys, e.g. rc task_code+rc motif_ratio_bin");
  rp->add_option("--tsv", r_tsv, "Also write the tab-separated table here");

  // analyze
  auto* an = app.add_subcommand("analyze", "Regression variance shares and GVIF");
  std::string a_scores, a_predictors, a_tsv;
  an->add_option("--scores", a_scores)->required();
  an->add_option("--predictors", a_predictors, "Predictor spec JSON file or inline object")
      ->required();
  an->add_option("--tsv", a_tsv, "Also write the tab-separated table here");

  // pool
  auto* po = app.add_subcommand("pool", "Rebuild the molecular-formula pool");
  std::string p_out;
  chem::PoolSpec pspec;
  pspec.max_heavy = 7;
  pspec.max_states = 50000;
  po->add_option("--out", p_out)->required();
  po->add_option("--max-heavy", pspec.max_heavy);
  po->add_option("--min-carbons", pspec.min_carbons);
  po->add_option("--max-carbons", pspec.max_carbons);
  po->add_option("--max-hetero", pspec.max_hetero);
  po->add_option("--min-isomers", pspec.min_isomers);
  po->add_option("--max-isomers", pspec.max_isomers);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      auto data = harness::generate_tasks(parse_task_code(g_task), read_params(g_params), g_seed,
                                          g_base);
      for (const auto& inst : data) validate_instance(inst);
      save_dataset(data, g_out);
      fmt::print(stderr, "wrote {} {} instances to {}\n", data.size(), g_task, g_out);
    } else if (*ev) {
      auto data = load_dataset(e_dataset);
      harness::AggregationPolicy policy{harness::parse_agg_mode(e_agg), e_samples};
      policy.validate();
      harness::EndpointConfig cfg;
      cfg.base_url = e_endpoint;
      cfg.model = e_model;
      cfg.max_tokens = e_max_tokens;
      cfg.timeout_s = e_timeout;
      cfg.parallel = e_parallel;
      cfg.retry.retries = e_retries;
      cfg.retry.backoff_s = e_backoff;
      harness::EvalOptions opts;
      opts.n_samples = e_samples;
      opts.icl_shots = e_icl;
      opts.structured = e_structured;
      opts.temperature = e_temp;
      opts.parallel = e_parallel;
      std::size_t done = 0;
      const std::size_t total = data.size() * static_cast<std::size_t>(e_samples);
      auto records = harness::evaluate_run(
          data, harness::http_caller(cfg), opts, [&](const harness::RunRecord& r) {
            ++done;
            if (r.errored)
              fmt::print(stderr, "[{}/{}] {} #{} error: {}\n", done, total, r.instance_id,
                         r.sample, r.error);
            else if (done % 10 == 0 || done == total)
              fmt::print(stderr, "[{}/{}]\n", done, total);
          });
      std::vector<Json> rows;
      std::size_t errored = 0;
      for (const auto& r : records) {
        Json j = harness::record_to_json(r);
        j["aggregate"] = std::string(harness::to_string(policy.mode));
        j["n_samples"] = policy.n;
        rows.push_back(std::move(j));
        errored += r.errored;
      }
      const std::string out = e_out.empty() ? e_dataset + ".responses.jsonl" : e_out;
      write_jsonl(rows, out);
      fmt::print(stderr, "wrote {} records ({} errored) to {}\n", rows.size(), errored, out);
    } else if (*sc) {
      auto data = load_dataset(s_dataset);
      auto raw = read_jsonl(s_responses);
      std::vector<harness::RunRecord> records;
      for (const auto& j : raw) records.push_back(harness::record_from_json(j));
      std::string mode = s_agg;
      int n = s_samples;
      if (!raw.empty()) {
        if (mode.empty()) mode = raw.front().value("aggregate", "single");
        if (n == 0) n = raw.front().value("n_samples", 1);
      }
      harness::AggregationPolicy policy{harness::parse_agg_mode(mode.empty() ? "single" : mode),
                                        n == 0 ? 1 : n};
      harness::rescore(data, records);
      auto agg = harness::aggregate(data, records, policy);
      auto rows = harness::make_score_rows(data, agg, policy);
      harness::save_score_rows(s_out, rows);
      std::size_t flagged = 0;
      for (const auto& r : rows) flagged += r.flagged;
      fmt::print(stderr, "scored {} instances ({} flagged for missing samples) to {}\n",
                 rows.size(), flagged, s_out);
    } else if (*rp) {
      auto rows = harness::load_score_rows(r_scores);
      auto rep = harness::stratified_report(
          rows, r_strata.empty() ? harness::default_strata() : r_strata);
      std::cout << harness::report_text(rep);
      if (!r_tsv.empty()) write_file(r_tsv, harness::report_tsv(rep));
    } else if (*an) {
      auto rows = harness::load_score_rows(a_scores);
      auto spec = analysis::design_spec_from_json(read_params(a_predictors));
      auto X = analysis::build_design(rows, spec);
      auto fit = analysis::fit_ols(X);
      std::cout << fmt::format("rows used: {} (dropped {})\n", X.rows(), X.dropped_rows);
      std::cout << analysis::fit_text(fit);
      if (!a_tsv.empty()) write_file(a_tsv, analysis::fit_tsv(fit));
    } else if (*po) {
      auto pool = chem::build_formula_pool(pspec);
      std::string hetero;
      for (int z : pspec.hetero) hetero += (hetero.empty() ? "" : " ") + std::string(chem::element_symbol(z));
      write_or_print(p_out, fmt::format("# formula\tisomers (C{}-C{}, {}, <= {} heavy atoms, {}-{} isomers)\n",
                                        pspec.min_carbons, pspec.max_carbons, hetero, pspec.max_heavy,
                                        pspec.min_isomers, pspec.max_isomers) +
                                chem::format_formula_pool(pool));
      fmt::print(stderr, "wrote {} formulas\n", pool.size());
    }
  } catch (const SchemaError& e) {
    fmt::print(stderr, "schema error: {}\n", e.what());
    return 3;
  } catch (const IoError& e) {
    fmt::print(stderr, "io error: {}\n", e.what());
    return 4;
  } catch (const Error& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    fmt::print(stderr, "unexpected error: {}\n", e.what());
    return 1;
  }
  return 0;
}
