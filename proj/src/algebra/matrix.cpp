#include <algorithm>
#include <string>

#include "rel/algebra/generate.hpp"
#include "rel/algebra/prompt.hpp"
#include "rel/core/error.hpp"
#include "rel/core/text.hpp"

namespace rel::algebra {
namespace {

constexpr int kRowAttempts = 1000;
constexpr int kSignAttempts = 200;

std::int64_t resolve_increment(const MatrixOptions& opts, SeededRng& rng) {
  if (opts.rule.increment) return *opts.rule.increment;
  // (n-1)|d| must fit in the domain so that every row stays in range.
  std::int64_t cap = (opts.domain.size() - 1) / (opts.n - 1);
  std::int64_t hi = std::min(opts.increment_range.hi, cap);
  std::int64_t lo = std::min(opts.increment_range.lo, hi);
  std::int64_t mag = rng.uniform_int(lo, hi);
  return rng.bernoulli(0.5) ? mag : -mag;
}

std::vector<int> sample_signs(int count, SeededRng& rng) {
  std::vector<int> s(count);
  do {
    for (int& v : s) v = rng.bernoulli(0.5) ? 1 : -1;
  } while (std::all_of(s.begin(), s.end(), [](int v) { return v < 0; }));
  return s;
}

// Fills rows under fixed signs; false when a row keeps going negative.
bool fill_row_sums(Grid& g, const std::vector<int>& signs,
                   const ValueDomain& dom, SeededRng& rng) {
  const int n = g.n;
  for (int r = 0; r < n; ++r) {
    bool ok = false;
    for (int attempt = 0; attempt < kRowAttempts && !ok; ++attempt) {
      std::int64_t sum = 0;
      for (int c = 0; c < n - 1; ++c) {
        g.at(r, c) = rng.uniform_int(dom.lo, dom.hi);
        sum += signs[c] * g.at(r, c);
      }
      if (sum >= 0) {
        g.at(r, n - 1) = sum;
        ok = true;
      }
    }
    if (!ok) return false;
  }
  return true;
}

}  // namespace

Grid generate_grid(const MatrixOptions& opts, RuleSpec& resolved,
                   SeededRng& rng) {
  const int n = opts.n;
  const ValueDomain& dom = opts.domain;
  if (n < 3) throw ParameterError("matrix side n must be >= 3");
  if (dom.size() < 1 || dom.lo < 0) {
    throw ParameterError("matrix value domain must be a non-empty range >= 0");
  }
  resolved = opts.rule;
  Grid g;
  g.n = n;
  g.cells.assign(static_cast<std::size_t>(n) * n, 0);

  switch (opts.rule.code) {
    case TaskCode::A1:
      for (int r = 0; r < n; ++r) {
        std::int64_t v = rng.uniform_int(dom.lo, dom.hi);
        for (int c = 0; c < n; ++c) g.at(r, c) = v;
      }
      break;
    case TaskCode::A2: {
      std::int64_t d = resolve_increment(opts, rng);
      std::int64_t span = (n - 1) * (d < 0 ? -d : d);
      if (span > dom.size() - 1) {
        throw ParameterError("A2 increment does not fit in the value domain");
      }
      resolved.increment = d;
      for (int r = 0; r < n; ++r) {
        std::int64_t start = d >= 0 ? rng.uniform_int(dom.lo, dom.hi - span)
                                    : rng.uniform_int(dom.lo + span, dom.hi);
        for (int c = 0; c < n; ++c) g.at(r, c) = start + c * d;
      }
      break;
    }
    case TaskCode::A3: {
      if (dom.size() < n) {
        throw ParameterError("A3 needs at least n distinct domain values");
      }
      std::vector<std::int64_t> vals;
      for (std::size_t idx : rng.sample_indices(dom.size(), n)) {
        vals.push_back(dom.lo + static_cast<std::int64_t>(idx));
      }
      for (int r = 0; r < n; ++r) {
        std::vector<std::int64_t> row = vals;
        rng.shuffle(row);
        for (int c = 0; c < n; ++c) g.at(r, c) = row[c];
      }
      break;
    }
    case TaskCode::A4: {
      bool fixed = !opts.rule.signs.empty();
      if (fixed && static_cast<int>(opts.rule.signs.size()) != n - 1) {
        throw ParameterError("A4 sign vector must have n-1 entries");
      }
      for (int attempt = 0;; ++attempt) {
        std::vector<int> signs =
            fixed ? opts.rule.signs : sample_signs(n - 1, rng);
        if (fill_row_sums(g, signs, dom, rng)) {
          resolved.signs = signs;
          break;
        }
        if (fixed || attempt + 1 >= kSignAttempts) {
          throw ParameterError("A4 signs keep forcing negative row sums");
        }
      }
      break;
    }
    default:
      throw ParameterError("gen_matrix_task expects a rule in A1..A4");
  }
  return g;
}

TaskInstance gen_matrix_task(const MatrixOptions& opts, SeededRng rng) {
  SeededRng grid_rng = rng.split("grid");
  SeededRng pick_rng = rng.split("missing");
  SeededRng cand_rng = rng.split("candidates");

  RuleSpec rule;
  Grid g = generate_grid(opts, rule, grid_rng);
  std::size_t cell = pick_rng.uniform_index(g.cells.size());
  g.missing_row = static_cast<int>(cell) / g.n;
  g.missing_col = static_cast<int>(cell) % g.n;
  std::int64_t correct = g.hidden();
  ValueDomain window = distractor_domain(rule, correct, opts.distractor_radius);
  CandidateSet cands = build_candidates(correct, window, cand_rng);

  TaskInstance inst;
  inst.domain = Domain::kAlgebra;
  inst.task_code = rule.code;
  inst.seed = rng.seed();

  Json gp;
  gp["rule"] = std::string(to_string(rule.code));
  gp["n"] = g.n;
  gp["domain"] = {opts.domain.lo, opts.domain.hi};
  gp["format"] = opts.format == MatrixFormat::kPipe ? "pipe" : "rows";
  gp["cells"] = grid_to_json(g);
  gp["missing"] = {g.missing_row, g.missing_col};
  gp["distractor_domain"] = {window.lo, window.hi};
  if (rule.code == TaskCode::A2) gp["increment"] = *rule.increment;
  if (rule.code == TaskCode::A4) gp["signs"] = rule.signs;
  if (!rng.path().empty()) gp["rng_path"] = join(rng.path(), "/");
  inst.gen_params = std::move(gp);

  inst.rc = expected_rc(inst.task_code, inst.gen_params);
  inst.prompt = render_matrix_prompt(g, cands, opts.format);
  inst.answer = ChoiceIndex{
      cands.correct_index,
      std::vector<std::int64_t>(cands.values.begin(), cands.values.end())};

  std::int64_t widest = 0;
  for (std::int64_t v : g.cells) widest = std::max(widest, v < 0 ? -v : v);
  inst.oc_params["n"] = g.n;
  inst.oc_params["digits"] = static_cast<double>(std::to_string(widest).size());
  inst.oc_params["prompt_chars"] = static_cast<double>(inst.prompt.size());
  inst.id = instance_id(inst.task_code, inst.gen_params, inst.seed);
  return inst;
}

}  // namespace rel::algebra
