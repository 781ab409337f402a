// One PASS/FAIL line per acceptance criterion; non-zero exit on any failure.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <set>
#include <sstream>

#include <fmt/core.h>

#include "algebra_verifier.hpp"
#include "b1_checker.hpp"
#include "chem_cases.hpp"
#include "chem_oracles.hpp"
#include "harness_cases.hpp"
#include "published.hpp"
#include "rel/algebra/generate.hpp"
#include "rel/algebra/oracle.hpp"
#include "rel/analysis/ols.hpp"
#include "rel/chem/bank.hpp"
#include "rel/chem/enumerate.hpp"
#include "rel/chem/formula.hpp"
#include "rel/chem/match.hpp"
#include "rel/chem/smiles.hpp"
#include "rel/chem/tasks.hpp"
#include "rel/core/dataset.hpp"
#include "rel/epistasis/b2.hpp"
#include "rel/epistasis/classify.hpp"
#include "rel/epistasis/walsh.hpp"
#include "rel/harness/aggregate.hpp"
#include "rel/harness/endpoint.hpp"
#include "rel/harness/evaluate.hpp"
#include "rel/harness/generate.hpp"
#include "rel/harness/report.hpp"
#include "rel/phylo/b1.hpp"
#include "stub_server.hpp"

using namespace rel;

namespace {

const std::string kRoot = REL_SOURCE_DIR;

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Records the first few failures so the detail line stays short.
struct Failures {
  std::size_t count = 0;
  std::string first;
  void add(const std::string& what) {
    if (count++ == 0) first = what;
  }
  bool none() const { return count == 0; }
  std::string text() const { return fmt::format("{} failures, first: {}", count, first); }
};

Outcome ac1() {
  auto t0 = Clock::now();
  Failures f;
  std::size_t n_inst = 0;
  for (TaskCode code : {TaskCode::A1, TaskCode::A2, TaskCode::A3, TaskCode::A4, TaskCode::A5,
                        TaskCode::A6, TaskCode::A7}) {
    for (int n : {3, 9, 15}) {
      for (std::uint64_t seed = 0; seed < 200; ++seed) {
        SeededRng rng(seed * 1000 + n);
        TaskInstance inst;
        if (algebra::is_matrix_rule(code)) {
          algebra::MatrixOptions o;
          o.rule.code = code;
          o.n = n;
          inst = algebra::gen_matrix_task(o, rng);
        } else {
          algebra::TensorOptions o;
          o.rule.code = code;
          o.n = n;
          inst = algebra::gen_tensor_task(o, rng);
        }
        ++n_inst;
        auto problems = oracle::verify_algebra(inst);
        if (!problems.empty())
          f.add(fmt::format("{} n={} seed={}: {}", to_string(code), n, seed, problems[0]));
        const auto& ans = std::get<ChoiceIndex>(inst.answer);
        if (algebra::solve_rule_oracle(inst) != ans.value())
          f.add(fmt::format("{} n={} seed={}: solver disagrees", to_string(code), n, seed));
      }
    }
  }
  double secs = seconds_since(t0);
  if (!f.none()) return {false, f.text()};
  return {secs < 60.0, fmt::format("{} instances verified in {:.1f}s", n_inst, secs)};
}

Outcome ac2() {
  Failures f;
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    algebra::TensorOptions o;
    o.rule.code = TaskCode::A7;
    o.rule.modulus = 7;
    o.rule.maxval = 9;
    o.n = 3;
    o.k_slices = 3;
    SeededRng rng(seed);
    auto c = algebra::generate_cube(o, rng);
    std::vector<std::vector<std::vector<long long>>> cube(
        c.k_slices, std::vector<std::vector<long long>>(c.n, std::vector<long long>(c.n)));
    for (int s = 0; s < c.k_slices; ++s)
      for (int r = 0; r < c.n; ++r)
        for (int col = 0; col < c.n; ++col) cube[s][r][col] = c.cells[c.index(s, r, col)];
    int bad = oracle::a7_changed_cells(cube, 7);
    auto copy = c;
    int changed = algebra::neighborhood_sweep(copy);
    if (c.cells.size() != 27) f.add(fmt::format("seed {}: {} cells", seed, c.cells.size()));
    if (bad) f.add(fmt::format("seed {}: {} cells break the neighbour sum", seed, bad));
    if (changed || copy.cells != c.cells) f.add(fmt::format("seed {}: sweep changed cells", seed));
  }
  if (!f.none()) return {false, f.text()};
  return {true, "500 cubes are fixed points at all 27 cells"};
}

Outcome ac3() {
  std::vector<std::pair<TaskInstance, std::int64_t>> cases{{fixtures::a1_example(), 761},
                                                           {fixtures::a4_example(), 512},
                                                           {fixtures::a5_example(), 30},
                                                           {fixtures::a6_example(), 9}};
  for (const auto& [inst, want] : cases) {
    auto got = algebra::solve_rule_oracle(inst);
    if (got != want) return {false, fmt::format("expected {}, got {}", want, got)};
  }
  auto spec = epistasis::mobius_coefficients(fixtures::b2_example());
  double w = spec.coefficients[3];
  auto cls = epistasis::classify_structure(spec, 2).cls;
  bool ok = std::abs(std::abs(w) - 0.033001) < 1e-6 && std::abs(spec.tau - 0.220143) < 1e-6 &&
            cls == epistasis::StructureClass::kIndependent;
  return {ok, fmt::format("761/512/30/9 reproduced; |W|={:.6f} tau={:.6f} class={}", std::abs(w),
                          spec.tau, epistasis::to_string(cls))};
}

double random_b2(int k, int count, std::uint64_t seed) {
  auto data = harness::generate_tasks(TaskCode::B2, {{"count", count}, {"k", k}}, seed, kRoot);
  SeededRng rng(seed + 1);
  double hits = 0;
  for (const auto& inst : data) {
    const auto& ans = std::get<Letter>(inst.answer);
    char guess = static_cast<char>('A' + rng.uniform_index(ans.n_options));
    hits += harness::score_response(inst, std::string(1, guess)).correct;
  }
  return hits / count;
}

Outcome ac4() {
  const int count = 10000;
  SeededRng rng(44);
  double hits = 0;
  const TaskCode codes[] = {TaskCode::A1, TaskCode::A2, TaskCode::A3, TaskCode::A4,
                            TaskCode::A5, TaskCode::A6, TaskCode::A7};
  for (int i = 0; i < count; ++i) {
    auto r = rng.split(i);
    TaskCode code = codes[i % 7];
    TaskInstance inst;
    if (algebra::is_matrix_rule(code)) {
      algebra::MatrixOptions o;
      o.rule.code = code;
      o.n = 3;
      inst = algebra::gen_matrix_task(o, r);
    } else {
      algebra::TensorOptions o;
      o.rule.code = code;
      o.n = 3;
      inst = algebra::gen_tensor_task(o, r);
    }
    const auto& c = std::get<ChoiceIndex>(inst.answer);
    auto guess = c.candidates[rng.uniform_index(c.candidates.size())];
    hits += harness::score_response(inst, std::to_string(guess)).correct;
  }
  double algebra_acc = hits / count;
  double k2 = random_b2(2, 5000, 45);
  double k3 = random_b2(3, 5000, 46);
  bool ok = std::abs(algebra_acc - 0.125) <= 0.02 && std::abs(k2 - 1.0 / 3) <= 0.02 &&
            std::abs(k3 - 0.25) <= 0.02;
  return {ok, fmt::format("algebra {:.4f} (0.125), B2 k=2 {:.4f} (0.333), k=3 {:.4f} (0.25)",
                          algebra_acc, k2, k3)};
}

Outcome ac5() {
  auto t0 = Clock::now();
  auto sched = phylo::b1_schedule_from_json(Json::parse(read_file(kRoot + "/data/b1_sweep.json")));
  auto data = phylo::gen_b1_sweep(sched, SeededRng(55));
  Failures f;
  std::size_t positives = 0;
  for (const auto& inst : data) {
    auto problems = oracle::verify_b1(inst);
    if (!problems.empty()) f.add(inst.id + ": " + problems[0]);
    if (std::get<YesNoTaxa>(inst.answer).yes) ++positives;
    auto s = phylo::score_b1(inst, harness::reference_response(inst));
    if (!s.correct) f.add(inst.id + ": reference answer scored incorrect");
  }
  double secs = seconds_since(t0);
  if (data.size() != 2600) f.add(fmt::format("{} instances, expected 2600", data.size()));
  if (!f.none()) return {false, f.text()};
  return {secs < 600.0, fmt::format("{} instances ({} positive) generated and checked in {:.1f}s",
                                    data.size(), positives, secs)};
}

Outcome ac6() {
  SeededRng rng(66);
  double worst = 0;
  Failures f;
  for (int i = 0; i < 1000; ++i) {
    int k = 2 + i % 5;
    epistasis::LocalLandscape land;
    land.k = k;
    for (int j = 0; j < k; ++j) land.labels.push_back("M" + std::to_string(j));
    for (int m = 0; m < (1 << k); ++m) land.fitness.push_back(rng.uniform_real(-5, 5));
    auto back = epistasis::reconstruct_fitness(epistasis::mobius_coefficients(land).coefficients);
    for (int m = 0; m < (1 << k); ++m) {
      double rel =
          std::abs(back[m] - land.fitness[m]) / std::max(1.0, std::abs(land.fitness[m]));
      worst = std::max(worst, rel);
    }
  }
  if (worst > 1e-9) f.add(fmt::format("reconstruction error {:.3g}", worst));
  double worst_add = 0;
  for (int i = 0; i < 200; ++i) {
    int k = 2 + i % 5;
    epistasis::LocalLandscape land;
    land.k = k;
    land.labels.assign(k, "x");
    std::vector<double> a(k);
    for (auto& v : a) v = rng.uniform_real(-2, 2);
    for (int m = 0; m < (1 << k); ++m) {
      double fit = 1.0;
      for (int j = 0; j < k; ++j)
        if (m >> j & 1) fit += a[j];
      land.fitness.push_back(fit);
    }
    auto w = epistasis::mobius_coefficients(land).coefficients;
    for (int m = 0; m < (1 << k); ++m)
      if (__builtin_popcount(m) >= 2) worst_add = std::max(worst_add, std::abs(w[m]));
  }
  if (worst_add > 1e-12) f.add(fmt::format("additive interaction {:.3g}", worst_add));
  if (!f.none()) return {false, f.text()};
  return {true, fmt::format("1000 landscapes k=2..6, max relative error {:.2g}; 200 additive, "
                            "max interaction {:.2g}",
                            worst, worst_add)};
}

// Every composition of 1..6 heavy atoms over C N O S Cl with each H count
// of matching parity up to the tree limit.
std::vector<std::string> small_formulas() {
  const std::vector<std::pair<std::string, int>> el{{"C", 4}, {"N", 3}, {"O", 2}, {"S", 2}, {"Cl", 1}};
  std::vector<std::string> out;
  std::function<void(std::size_t, int, std::vector<int>&)> rec = [&](std::size_t e, int left,
                                                                      std::vector<int>& cnt) {
    if (e == el.size()) {
      int n = 0, v = 0;
      for (std::size_t i = 0; i < el.size(); ++i) n += cnt[i], v += cnt[i] * el[i].second;
      if (n == 0) return;
      for (int h = 0; h <= v - 2 * (n - 1); ++h) {
        if ((v - h) % 2) continue;
        std::string s;
        for (std::size_t i = 0; i < el.size(); ++i) {
          if (i == 1 && h) s += h > 1 ? "H" + std::to_string(h) : "H";
          if (cnt[i]) s += el[i].first + (cnt[i] > 1 ? std::to_string(cnt[i]) : "");
        }
        out.push_back(s);
      }
      return;
    }
    for (int c = 0; c <= left; ++c) {
      cnt[e] = c;
      rec(e + 1, left - c, cnt);
    }
    cnt[e] = 0;
  };
  std::vector<int> cnt(el.size());
  rec(0, 6, cnt);
  return out;
}

std::vector<int> random_perm(int n, SeededRng& rng) {
  std::vector<int> p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  rng.shuffle(p);
  return p;
}

Outcome ac7() {
  auto t0 = Clock::now();
  Failures f;
  auto formulas = small_formulas();
  std::size_t members = 0;
  for (const auto& text : formulas) {
    auto fm = chem::parse_formula(text);
    std::map<int, int> heavy;
    for (auto [z, c] : fm.counts)
      if (z != 1 && c) heavy[z] = c;
    auto o = oracle::brute_force_isomers(heavy, fm.count(1));
    std::set<std::string> want;
    for (const auto& m : o.representatives) want.insert(chem::canonical_smiles(m));
    auto got = chem::enumerate_isomers(fm, 1000000);
    std::set<std::string> got_set(got.members.begin(), got.members.end());
    members += got_set.size();
    if (got.truncated || got_set != want || want.size() != o.representatives.size())
      f.add(fmt::format("{}: library {} vs oracle {}", text, got_set.size(), want.size()));
  }

  auto bank = chem::load_bank(kRoot + "/data/bank_demo.smi", 15, 60);
  SeededRng rng(77);
  std::size_t perms = 0;
  for (std::size_t i = 0; i < 100 && i < bank.entries.size(); ++i) {
    const auto& m = bank.entries[i].mol;
    for (int p = 0; p < 1000; ++p, ++perms) {
      auto q = m.permuted(random_perm(m.n_atoms(), rng));
      if (chem::canonical_smiles(q) != bank.entries[i].smiles) {
        f.add(bank.entries[i].name + ": canonical form changed under permutation");
        break;
      }
    }
  }

  std::size_t c2_checked = 0;
  for (int i = 0; i < 200; ++i) {
    chem::C2Params p;
    auto inst = chem::gen_c2(bank, p, SeededRng(7000 + i));
    auto mcs = chem::parse_smiles(std::get<Smiles>(inst.answer).smiles);
    for (const auto& s : inst.gen_params.at("molecules")) {
      auto mol = chem::parse_smiles(s.get<std::string>());
      if (!oracle::monomorphic(mcs, mol.permuted(random_perm(mol.n_atoms(), rng))))
        f.add(inst.id + ": answer does not embed in " + s.get<std::string>());
    }
    ++c2_checked;
  }

  // Exhaustive MCS on small sets.
  std::vector<chem::MolGraph> small;
  for (const char* s : {"Cc1ccccc1", "CCc1ccccc1", "COc1ccccc1", "Oc1ccccc1", "OC(=O)c1ccccc1",
                        "OC1CCCCC1", "c1ccncc1", "Cc1ccncc1", "CC(=O)Nc1ccccc1", "Clc1ccc(Cl)cc1",
                        "CCOC(=O)C", "CCCCO", "CC(C)CO", "C1CCOC1", "c1ccoc1", "CC(=O)C",
                        "CCN(CC)CC", "OCC(O)CO", "c1ccc2ccccc2c1", "Cc1ccc(C)cc1", "C=CC(=O)OC",
                        "CCCCCCC(=O)O", "CCCCCCCCO", "CC(C)Cc1ccc(C)cc1"})
    small.push_back(chem::parse_smiles(s));
  auto writable = [](const chem::MolGraph& m, const std::vector<int>& bonds) {
    return chem::bond_fragment(m, bonds).has_value();
  };
  for (int rep = 0; rep < 100; ++rep) {
    std::vector<chem::MolGraph> set;
    std::size_t k = 2 + rng.uniform_index(3);
    for (auto idx : rng.sample_indices(small.size(), k)) set.push_back(small[idx]);
    chem::McsOptions opts;
    opts.min_atoms = 1;
    auto got = chem::mcs_of_set(set, opts);
    auto want = oracle::exhaustive_mcs(set, writable);
    if (!got.exact || got.n_bonds != want.n_bonds || got.n_atoms != want.n_atoms)
      f.add(fmt::format("MCS set {}: library {}/{} vs oracle {}/{}", rep, got.n_atoms,
                        got.n_bonds, want.n_atoms, want.n_bonds));
  }
  double secs = seconds_since(t0);
  if (!f.none()) return {false, f.text()};
  return {true, fmt::format("{} formulas ({} isomers) match the brute-force oracle; {} permutations "
                            "stable; {} C2 answers embed; 100 MCS sets exact ({:.0f}s)",
                            formulas.size(), members, perms, c2_checked, secs)};
}

Outcome ac8() {
  Failures f;
  auto bank = chem::load_bank(kRoot + "/data/bank_demo.smi", 15, 60);
  for (std::size_t i = 0; i < bank.entries.size(); ++i) {
    const auto& s = bank.entries[i].smiles;
    if (chem::substructure_score(s, s) != 1.0) f.add(s + ": self score not 1");
    const auto& t = bank.entries[(i + 1) % bank.entries.size()].smiles;
    double v = chem::substructure_score(s, t);
    if (v < 0.0 || v > 1.0) f.add(s + ": score out of range");
    if (v == 1.0 && chem::canonical_smiles(std::string_view(s)) != t)
      f.add(s + ": score 1 for a different molecule");
  }
  if (chem::substructure_score("c1ccccc1", "Cc1ccccc1") != 0.5) f.add("benzene in toluene");
  if (chem::substructure_score("C1CC", "c1ccccc1") != 0.0) f.add("invalid prediction");

  auto c3 = fixtures::c3_instance();
  int n3 = 0;
  for (const auto& c : fixtures::c3_cases()) {
    auto s = chem::score_c3(c3, fixtures::c3_text(c));
    if (std::abs(s.recall - c.recall) > 1e-12 || std::abs(s.precision - c.precision) > 1e-12 ||
        std::abs(s.f1 - c.f1) > 1e-12)
      f.add(fmt::format("C3 case {}", n3));
    ++n3;
  }
  auto c4 = fixtures::c4_instance();
  int n4 = 0;
  for (const auto& c : fixtures::c4_cases()) {
    auto s = chem::score_c4(c4, fixtures::c4_text(c));
    if (s.failed != c.failed) f.add(fmt::format("C4 case {} ({} / {})", n4, c.m0, c.m1));
    ++n4;
  }
  if (!f.none()) return {false, f.text()};
  return {true, fmt::format("{} bank identities, {} C3 cases, {} C4 cases", bank.entries.size(),
                            n3, n4)};
}

std::string pipeline(const std::vector<TaskInstance>& data, const std::string& url,
                     const std::string& dir, const std::string& tag) {
  harness::EndpointConfig cfg;
  cfg.base_url = url;
  cfg.model = "stub";
  cfg.max_tokens = 256;
  cfg.timeout_s = 10;
  cfg.api_key = "acceptance";
  harness::EvalOptions opts;
  opts.n_samples = 3;
  opts.parallel = 3;
  auto runs = harness::evaluate_run(data, harness::http_caller(cfg), opts);
  auto runs_path = dir + "/runs_" + tag + ".jsonl";
  harness::save_records(runs_path, runs);
  auto back = harness::load_records(runs_path);
  harness::rescore(data, back);
  std::string out;
  for (auto mode : {harness::AggMode::kSingle, harness::AggMode::kBestOfN,
                    harness::AggMode::kMajorityVote}) {
    harness::AggregationPolicy pol{mode, mode == harness::AggMode::kSingle ? 1 : 3};
    auto rows = harness::make_score_rows(data, harness::aggregate(data, back, pol), pol);
    auto scores_path = dir + "/scores_" + tag + ".jsonl";
    harness::save_score_rows(scores_path, rows);
    out += harness::report_tsv(
        harness::stratified_report(harness::load_score_rows(scores_path), harness::default_strata()));
  }
  return out;
}

Outcome ac9() {
  Failures f;
  auto dir = (std::filesystem::temp_directory_path() / "rel_acceptance").string();
  std::filesystem::create_directories(dir);
  auto data = fixtures::mixed_dataset(kRoot);
  save_dataset(data, dir + "/data.jsonl");
  data = load_dataset(dir + "/data.jsonl");
  harness::EvalOptions opts;
  fixtures::ScriptedModel model(data, opts);
  fixtures::StubServer stub([&](const Json& body, int) {
    std::string prompt = body.at("messages")[0].at("content");
    return fixtures::StubReply{200, model.reply(prompt)};
  });
  auto a = pipeline(data, stub.url(), dir, "a");
  auto b = pipeline(data, stub.url(), dir, "b");
  if (a != b) f.add("replay differs");
  if (a.find("unknown prompt") != std::string::npos) f.add("stub saw an unexpected prompt");

  // BoN against the first sample over varied samples.
  SeededRng rng(99);
  std::vector<harness::RunRecord> recs;
  for (const auto& inst : data) {
    std::vector<std::string> texts;
    for (int s = 0; s < 5; ++s)
      texts.push_back(rng.bernoulli(0.4) ? harness::reference_response(inst)
                                         : fixtures::ScriptedModel::wrong_answer(inst));
    auto r = fixtures::records_for(inst, texts);
    recs.insert(recs.end(), r.begin(), r.end());
  }
  auto single = harness::aggregate(data, recs, {harness::AggMode::kSingle, 5});
  auto best = harness::aggregate(data, recs, {harness::AggMode::kBestOfN, 5});
  for (std::size_t i = 0; i < data.size(); ++i)
    if (best[i].score.score < single[i].score.score) f.add(data[i].id + ": BoN below single");

  auto vote_inst = fixtures::b1_vote_instance();
  auto vote = harness::aggregate({vote_inst}, fixtures::records_for(vote_inst, fixtures::b1_vote_samples()),
                                 {harness::AggMode::kMajorityVote, 5});
  if (!vote[0].score.correct || vote[0].score.answer.at("taxa") != Json::array({"3", "46"}))
    f.add("majority vote did not rebuild {3, 46}");
  if (!f.none()) return {false, f.text()};
  return {true, fmt::format("{} instances x 3 samples via stub, replay byte-identical ({} bytes); "
                            "BoN >= single; vote gives {{3, 46}}",
                            data.size(), a.size())};
}

analysis::DesignMatrix matrix(const std::vector<std::vector<double>>& cols,
                              const std::vector<double>& y) {
  analysis::DesignMatrix X;
  for (std::size_t c = 0; c < cols.size(); ++c) {
    X.columns.push_back("x" + std::to_string(c));
    X.groups.push_back("x" + std::to_string(c));
    X.group_of.push_back(static_cast<int>(c));
  }
  X.y = y;
  X.x.assign(y.size(), std::vector<double>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (std::size_t i = 0; i < y.size(); ++i) X.x[i][c] = cols[c][i];
  return X;
}

Outcome ac10() {
  Failures f;
  SeededRng rng(1010);
  std::vector<std::vector<double>> cols(3);
  std::vector<double> y;
  for (int rep = 0; rep < 8; ++rep)
    for (int m = 0; m < 8; ++m) {
      for (int c = 0; c < 3; ++c) cols[c].push_back((m >> c) & 1 ? 1.0 : -1.0);
      y.push_back(2.0 * cols[0].back() + 1.0 * cols[1].back() + 0.4 * cols[2].back() +
                  rng.uniform_real(-1, 1));
    }
  auto X = matrix(cols, y);
  double worst_vif = 0;
  for (auto& [g, v] : analysis::gvif(X)) worst_vif = std::max(worst_vif, std::abs(v - 1.0));
  if (worst_vif > 1e-9) f.add(fmt::format("VIF off by {:.3g}", worst_vif));
  auto full = analysis::fit_ols(X).r2_full;
  auto shares = analysis::unique_variance_shares(X);
  for (int c = 0; c < 3; ++c) {
    double marginal = analysis::fit_columns(matrix({cols[c]}, y), {0}).r2;
    double share = shares.at("x" + std::to_string(c));
    if (std::abs(share - marginal / full) > 1e-9)
      f.add(fmt::format("x{} share {:.6f} vs marginal {:.6f}", c, share, marginal / full));
  }

  // Planted: accuracy driven by rc, weakly by length, not by noise.
  std::vector<std::vector<double>> planted(3);
  std::vector<double> acc;
  for (int i = 0; i < 4000; ++i) {
    planted[0].push_back(rng.uniform_int(1, 8));
    planted[1].push_back(rng.uniform_real(100, 2000));
    planted[2].push_back(rng.uniform01());
    double p = 0.95 - 0.1 * planted[0].back() + 0.00002 * planted[1].back();
    acc.push_back(rng.bernoulli(std::clamp(p, 0.0, 1.0)) ? 1.0 : 0.0);
  }
  auto ps = analysis::unique_variance_shares(matrix(planted, acc));
  if (!(ps.at("x0") > ps.at("x1") && ps.at("x0") > ps.at("x2")))
    f.add("planted predictor does not have the largest share");
  if (!f.none()) return {false, f.text()};
  return {true, fmt::format("orthogonal VIF within {:.1g} of 1, shares = marginal R^2 / R^2; "
                            "planted shares rc {:.3f} len {:.3f} noise {:.3f}",
                            worst_vif, ps.at("x0"), ps.at("x1"), ps.at("x2"))};
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  const std::vector<std::function<Outcome()>> checks{ac1, ac2, ac3, ac4, ac5,
                                                     ac6, ac7, ac8, ac9, ac10};
  bool all = true;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    int k = static_cast<int>(i) + 1;
    if (!only.empty() && !only.count(k)) continue;
    Outcome o;
    auto t0 = Clock::now();
    try {
      o = checks[i]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    all = all && o.pass;
    fmt::print("AC{} {} {} [{:.1f}s]\n", k, o.pass ? "PASS" : "FAIL", o.detail, seconds_since(t0));
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
