#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <string>

#include "rel/algebra/generate.hpp"
#include "rel/algebra/prompt.hpp"
#include "rel/core/error.hpp"
#include "rel/core/text.hpp"

namespace rel::algebra {
namespace {

using Mat = std::vector<std::int64_t>;  // d x d, row-major, entries in [0,p)

bool is_prime(int p) {
  if (p < 2) return false;
  for (int q = 2; q * q <= p; ++q) {
    if (p % q == 0) return false;
  }
  return true;
}

std::int64_t inv_mod(std::int64_t a, std::int64_t p) {
  std::int64_t r = 1, e = p - 2;
  a = mod_floor(a, p);
  while (e > 0) {
    if (e & 1) r = r * a % p;
    a = a * a % p;
    e >>= 1;
  }
  return r;
}

Mat mat_mul(const Mat& a, const Mat& b, int d, int p) {
  Mat c(static_cast<std::size_t>(d) * d, 0);
  for (int i = 0; i < d; ++i) {
    for (int k = 0; k < d; ++k) {
      std::int64_t aik = a[i * d + k];
      if (aik == 0) continue;
      const std::int64_t* brow = &b[k * d];
      std::int64_t* crow = &c[i * d];
      for (int j = 0; j < d; ++j) crow[j] += aik * brow[j];
    }
    for (int j = 0; j < d; ++j) c[i * d + j] %= p;
  }
  return c;
}

// Linear map of one in-place row-major sweep over a single n x n slice.
Mat sweep_matrix(int n, int p) {
  const int d = n * n;
  Mat g(static_cast<std::size_t>(d) * d, 0);
  for (int i = 0; i < d; ++i) g[i * d + i] = 1;
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      std::vector<std::int64_t> row(d, 0);
      for (const StencilOffset& o : stencil(TaskCode::A7)) {
        int rr = (r + o.row + n) % n;
        int cc = (c + o.col + n) % n;
        int j = rr * n + cc;
        for (int t = 0; t < d; ++t) row[t] += g[j * d + t];
      }
      int i = r * n + c;
      for (int t = 0; t < d; ++t) g[i * d + t] = row[t] % p;
    }
  }
  return g;
}

std::vector<std::vector<std::int64_t>> null_space(Mat m, int d, int p) {
  std::vector<int> pivot_col;
  int row = 0;
  for (int col = 0; col < d && row < d; ++col) {
    int sel = -1;
    for (int r = row; r < d; ++r) {
      if (m[r * d + col] != 0) {
        sel = r;
        break;
      }
    }
    if (sel < 0) continue;
    for (int t = 0; t < d; ++t) std::swap(m[sel * d + t], m[row * d + t]);
    std::int64_t inv = inv_mod(m[row * d + col], p);
    for (int t = 0; t < d; ++t) m[row * d + t] = m[row * d + t] * inv % p;
    for (int r = 0; r < d; ++r) {
      if (r == row || m[r * d + col] == 0) continue;
      std::int64_t f = m[r * d + col];
      for (int t = 0; t < d; ++t) {
        m[r * d + t] = mod_floor(m[r * d + t] - f * m[row * d + t], p);
      }
    }
    pivot_col.push_back(col);
    ++row;
  }
  std::vector<bool> is_pivot(d, false);
  for (int c : pivot_col) is_pivot[c] = true;
  std::vector<std::vector<std::int64_t>> basis;
  for (int free = 0; free < d; ++free) {
    if (is_pivot[free]) continue;
    std::vector<std::int64_t> v(d, 0);
    v[free] = 1;
    for (std::size_t r = 0; r < pivot_col.size(); ++r) {
      v[pivot_col[r]] = mod_floor(-m[r * d + free], p);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

// Basis of the states from which repeated sweeps reach a fixed point:
// ker((G - I) G^m) with m >= d.
const std::vector<std::vector<std::int64_t>>& convergent_basis(int n, int p) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::vector<std::vector<std::int64_t>>>
      cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find({n, p});
  if (it != cache.end()) return it->second;

  const int d = n * n;
  Mat g = sweep_matrix(n, p);
  Mat power(static_cast<std::size_t>(d) * d, 0);
  for (int i = 0; i < d; ++i) power[i * d + i] = 1;
  Mat base = g;
  for (int e = d; e > 0; e >>= 1) {
    if (e & 1) power = mat_mul(power, base, d, p);
    if (e > 1) base = mat_mul(base, base, d, p);
  }
  Mat gm = g;
  for (int i = 0; i < d; ++i) gm[i * d + i] = mod_floor(gm[i * d + i] - 1, p);
  Mat m = mat_mul(gm, power, d, p);
  return cache.emplace(std::make_pair(n, p), null_space(std::move(m), d, p))
      .first->second;
}

// Sweeps until quiescent. False on a repeated state or the sweep cap.
bool sweep_to_fixed_point(Cube& cube, int max_sweeps, int& sweeps) {
  std::set<std::vector<std::int64_t>> seen;
  seen.insert(cube.cells);
  for (int s = 0; s < max_sweeps; ++s) {
    ++sweeps;
    if (neighborhood_sweep(cube) == 0) return true;
    if (!seen.insert(cube.cells).second) return false;
  }
  return false;
}

void fill_moving_sum(Cube& cube, TaskCode code) {
  const int n = cube.n;
  for (int s = 1; s < cube.k_slices; ++s) {
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) {
        std::int64_t sum = 0;
        for (const StencilOffset& o : stencil(code)) {
          sum += cube.at(s + o.slice, (r + o.row + n) % n, (c + o.col + n) % n);
        }
        cube.at(s, r, c) = cube.modulus ? mod_floor(sum, cube.modulus) : sum;
      }
    }
  }
}

}  // namespace

int neighborhood_sweep(Cube& cube) {
  const int n = cube.n;
  const int p = cube.modulus;
  int changed = 0;
  for (int s = 0; s < cube.k_slices; ++s) {
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) {
        std::int64_t sum = 0;
        for (const StencilOffset& o : stencil(TaskCode::A7)) {
          sum += cube.at(s, (r + o.row + n) % n, (c + o.col + n) % n);
        }
        std::int64_t v = mod_floor(sum, p);
        if (cube.at(s, r, c) != v) {
          cube.at(s, r, c) = v;
          ++changed;
        }
      }
    }
  }
  return changed;
}

Cube generate_cube(const TensorOptions& opts, SeededRng& rng,
                   SweepStats* stats) {
  const RuleSpec& rule = opts.rule;
  if (opts.n < 3) throw ParameterError("tensor side n must be >= 3");
  if (opts.k_slices < 1) throw ParameterError("tensor needs K >= 1 slices");
  Cube cube;
  cube.n = opts.n;
  cube.k_slices = opts.k_slices;
  cube.cells.assign(
      static_cast<std::size_t>(opts.k_slices) * opts.n * opts.n, 0);
  SweepStats local;
  SweepStats& st = stats ? *stats : local;
  st = SweepStats{};

  switch (rule.code) {
    case TaskCode::A5:
    case TaskCode::A6: {
      if (opts.k_slices < 2) {
        throw ParameterError("moving-sum tensors need K >= 2 slices");
      }
      cube.modulus = rule.code == TaskCode::A6 ? rule.modulus : 0;
      if (rule.code == TaskCode::A6 &&
          (cube.modulus < 2 || opts.seed_domain.hi >= cube.modulus)) {
        throw ParameterError("A6 needs modulus > every first-slice value");
      }
      if (opts.seed_domain.size() < 1 || opts.seed_domain.lo < 0) {
        throw ParameterError("first-slice domain must be non-empty and >= 0");
      }
      for (int r = 0; r < cube.n; ++r) {
        for (int c = 0; c < cube.n; ++c) {
          cube.at(0, r, c) =
              rng.uniform_int(opts.seed_domain.lo, opts.seed_domain.hi);
        }
      }
      fill_moving_sum(cube, rule.code);
      break;
    }
    case TaskCode::A7: {
      const int p = rule.modulus;
      if (!is_prime(p)) throw ParameterError("A7 modulus must be prime");
      if (rule.maxval < p - 1 || rule.maxval < 7) {
        throw ParameterError("A7 maxval must be >= p-1 and >= 7");
      }
      cube.modulus = p;
      cube.maxval = rule.maxval;
      // Attempt 0 is the plain random start of Algorithm 1.
      for (int r = 0; r < static_cast<int>(cube.cells.size()); ++r) {
        cube.cells[r] = rng.uniform_int(0, rule.maxval);
      }
      if (sweep_to_fixed_point(cube, opts.max_sweeps, st.sweeps)) break;
      st.literal_init = false;
      // Restarts draw from the subspace that converges instead of cycling.
      const auto& basis = convergent_basis(cube.n, p);
      const std::size_t d = static_cast<std::size_t>(cube.n) * cube.n;
      bool done = false;
      while (!done) {
        if (st.restarts >= opts.restart_cap) {
          throw IntegrityError("A7 sweeps kept cycling; restart cap reached");
        }
        ++st.restarts;
        for (int s = 0; s < cube.k_slices; ++s) {
          std::vector<std::int64_t> x(d, 0);
          for (const auto& b : basis) {
            std::int64_t coef = rng.uniform_int(0, p - 1);
            for (std::size_t t = 0; t < d; ++t) x[t] += coef * b[t];
          }
          for (std::size_t t = 0; t < d; ++t) {
            cube.cells[s * d + t] = x[t] % p;
          }
        }
        done = sweep_to_fixed_point(cube, opts.max_sweeps, st.sweeps);
      }
      break;
    }
    default:
      throw ParameterError("gen_tensor_task expects a rule in A5..A7");
  }
  return cube;
}

TaskInstance gen_tensor_task(const TensorOptions& in, SeededRng rng) {
  TensorOptions opts = in;
  RuleSpec& rule = opts.rule;
  if (rule.code == TaskCode::A5) rule.window = 4;
  if (rule.code == TaskCode::A6) {
    rule.window = 5;
    if (rule.modulus == 0) rule.modulus = 11;
  }
  if (rule.code == TaskCode::A7) {
    if (rule.modulus == 0) rule.modulus = 7;
    if (rule.maxval == 0) rule.maxval = 9;
  }

  SeededRng cube_rng = rng.split("cube");
  SeededRng pick_rng = rng.split("missing");
  SeededRng cand_rng = rng.split("candidates");
  SweepStats stats;
  Cube cube = generate_cube(opts, cube_rng, &stats);
  std::size_t cell = pick_rng.uniform_index(cube.cells.size());
  const std::size_t per_slice = static_cast<std::size_t>(cube.n) * cube.n;
  cube.missing_slice = static_cast<int>(cell / per_slice);
  cube.missing_row = static_cast<int>(cell % per_slice) / cube.n;
  cube.missing_col = static_cast<int>(cell % per_slice) % cube.n;
  std::int64_t correct = cube.hidden();
  ValueDomain window = distractor_domain(rule, correct, 0);
  CandidateSet cands = build_candidates(correct, window, cand_rng);

  TaskInstance inst;
  inst.domain = Domain::kAlgebra;
  inst.task_code = rule.code;
  inst.seed = rng.seed();

  Json gp;
  gp["rule"] = std::string(to_string(rule.code));
  gp["n"] = cube.n;
  gp["k_slices"] = cube.k_slices;
  gp["cells"] = cube_to_json(cube);
  gp["missing"] = {cube.missing_slice, cube.missing_row, cube.missing_col};
  gp["distractor_domain"] = {window.lo, window.hi};
  if (rule.code != TaskCode::A7) {
    gp["window"] = rule.window;
    gp["seed_domain"] = {opts.seed_domain.lo, opts.seed_domain.hi};
  }
  if (rule.modulus) gp["modulus"] = rule.modulus;
  if (rule.code == TaskCode::A7) {
    gp["maxval"] = rule.maxval;
    gp["sweeps"] = stats.sweeps;
    gp["restarts"] = stats.restarts;
    gp["literal_init"] = stats.literal_init;
  }
  if (!rng.path().empty()) gp["rng_path"] = join(rng.path(), "/");
  inst.gen_params = std::move(gp);

  inst.rc = expected_rc(inst.task_code, inst.gen_params);
  inst.prompt = render_tensor_prompt(cube, cands);
  inst.answer = ChoiceIndex{
      cands.correct_index,
      std::vector<std::int64_t>(cands.values.begin(), cands.values.end())};
  std::int64_t widest = 0;
  for (std::int64_t v : cube.cells) widest = std::max(widest, v < 0 ? -v : v);
  inst.oc_params["n"] = cube.n;
  inst.oc_params["k_slices"] = cube.k_slices;
  inst.oc_params["digits"] = static_cast<double>(std::to_string(widest).size());
  inst.oc_params["prompt_chars"] = static_cast<double>(inst.prompt.size());
  inst.id = instance_id(inst.task_code, inst.gen_params, inst.seed);
  return inst;
}

}  // namespace rel::algebra
