#include <algorithm>
#include <string>

#include "rel/algebra/generate.hpp"
#include "rel/algebra/oracle.hpp"
#include "rel/core/error.hpp"

namespace rel::algebra {
namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw IntegrityError(what);
}

std::int64_t solve_constant(const Grid& g) {
  const int mr = g.missing_row;
  const int peer = g.missing_col == 0 ? 1 : 0;
  Grid filled = g;
  filled.at(mr, g.missing_col) = g.at(mr, peer);
  for (int r = 0; r < g.n; ++r) {
    for (int c = 1; c < g.n; ++c) {
      require(filled.at(r, c) == filled.at(r, 0),
              "A1 row " + std::to_string(r + 1) + " is not constant");
    }
  }
  return filled.hidden();
}

std::int64_t solve_progression(const Grid& g, std::int64_t d) {
  const int mr = g.missing_row, mc = g.missing_col;
  const int peer = mc == 0 ? 1 : 0;
  Grid filled = g;
  filled.at(mr, mc) = g.at(mr, peer) + (mc - peer) * d;
  for (int r = 0; r < g.n; ++r) {
    for (int c = 1; c < g.n; ++c) {
      require(filled.at(r, c) - filled.at(r, c - 1) == d,
              "A2 row " + std::to_string(r + 1) + " breaks the increment");
    }
  }
  return filled.hidden();
}

std::int64_t solve_permutation(const Grid& g) {
  const int mr = g.missing_row;
  const int ref = mr == 0 ? 1 : 0;
  std::vector<std::int64_t> values;
  for (int c = 0; c < g.n; ++c) values.push_back(g.at(ref, c));
  std::sort(values.begin(), values.end());
  require(std::adjacent_find(values.begin(), values.end()) == values.end(),
          "A3 row values repeat");
  std::vector<std::int64_t> present;
  for (int c = 0; c < g.n; ++c) {
    if (c != g.missing_col) present.push_back(g.at(mr, c));
  }
  std::sort(present.begin(), present.end());
  std::vector<std::int64_t> absent;
  std::set_difference(values.begin(), values.end(), present.begin(),
                      present.end(), std::back_inserter(absent));
  require(absent.size() == 1, "A3 hidden row is not a partial permutation");
  Grid filled = g;
  filled.at(mr, g.missing_col) = absent[0];
  for (int r = 0; r < g.n; ++r) {
    std::vector<std::int64_t> row;
    for (int c = 0; c < g.n; ++c) row.push_back(filled.at(r, c));
    std::sort(row.begin(), row.end());
    require(row == values,
            "A3 row " + std::to_string(r + 1) + " is not a permutation");
  }
  return absent[0];
}

std::int64_t solve_row_sum(const Grid& g, const std::vector<int>& signs) {
  const int n = g.n, mr = g.missing_row, mc = g.missing_col;
  require(static_cast<int>(signs.size()) == n - 1, "A4 sign vector length");
  std::int64_t v = 0;
  if (mc == n - 1) {
    for (int c = 0; c < n - 1; ++c) v += signs[c] * g.at(mr, c);
  } else {
    std::int64_t rest = g.at(mr, n - 1);
    for (int c = 0; c < n - 1; ++c) {
      if (c != mc) rest -= signs[c] * g.at(mr, c);
    }
    v = signs[mc] * rest;
  }
  Grid filled = g;
  filled.at(mr, mc) = v;
  for (int r = 0; r < n; ++r) {
    std::int64_t sum = 0;
    for (int c = 0; c < n - 1; ++c) sum += signs[c] * filled.at(r, c);
    require(sum == filled.at(r, n - 1),
            "A4 row " + std::to_string(r + 1) + " breaks the signed sum");
  }
  return v;
}

std::int64_t stencil_sum(const Cube& c, TaskCode code, int s, int r, int col) {
  const int n = c.n;
  std::int64_t sum = 0;
  for (const StencilOffset& o : stencil(code)) {
    sum += c.at(s + o.slice, (r + o.row + n) % n, (col + o.col + n) % n);
  }
  return c.modulus ? mod_floor(sum, c.modulus) : sum;
}

std::int64_t solve_moving_sum(const Cube& c, TaskCode code) {
  Cube filled = c;
  const int s = c.missing_slice, r = c.missing_row, col = c.missing_col;
  std::int64_t v;
  if (s > 0) {
    v = stencil_sum(c, code, s, r, col);
  } else {
    // The hidden cell is the (0,0) operand of slice 1 at the same position.
    require(c.k_slices >= 2, "moving-sum tensor needs K >= 2");
    filled.at(0, r, col) = 0;
    std::int64_t rest = stencil_sum(filled, code, 1, r, col);
    v = c.at(1, r, col) - rest;
    if (c.modulus) v = mod_floor(v, c.modulus);
  }
  filled.at(s, r, col) = v;
  for (int ss = 1; ss < c.k_slices; ++ss) {
    for (int rr = 0; rr < c.n; ++rr) {
      for (int cc = 0; cc < c.n; ++cc) {
        require(filled.at(ss, rr, cc) == stencil_sum(filled, code, ss, rr, cc),
                "moving-sum rule violated at slice " + std::to_string(ss));
      }
    }
  }
  return v;
}

std::int64_t solve_neighborhood(const Cube& c) {
  require(c.modulus >= 2, "A7 tensor lacks a modulus");
  Cube filled = c;
  const int s = c.missing_slice, r = c.missing_row, col = c.missing_col;
  std::int64_t v = stencil_sum(c, TaskCode::A7, s, r, col);
  filled.at(s, r, col) = v;
  for (int ss = 0; ss < c.k_slices; ++ss) {
    for (int rr = 0; rr < c.n; ++rr) {
      for (int cc = 0; cc < c.n; ++cc) {
        require(filled.at(ss, rr, cc) ==
                    stencil_sum(filled, TaskCode::A7, ss, rr, cc),
                "A7 neighbourhood rule violated");
      }
    }
  }
  return v;
}

}  // namespace

std::int64_t solve_grid(const Grid& g, const RuleSpec& rule) {
  require(g.n >= 3, "grid side must be >= 3");
  switch (rule.code) {
    case TaskCode::A1: return solve_constant(g);
    case TaskCode::A2:
      require(rule.increment.has_value(), "A2 instance lacks its increment");
      return solve_progression(g, *rule.increment);
    case TaskCode::A3: return solve_permutation(g);
    case TaskCode::A4: return solve_row_sum(g, rule.signs);
    default: throw ParameterError("solve_grid expects a rule in A1..A4");
  }
}

std::int64_t solve_cube(const Cube& c, const RuleSpec& rule) {
  require(c.n >= 3, "tensor side must be >= 3");
  switch (rule.code) {
    case TaskCode::A5:
    case TaskCode::A6: return solve_moving_sum(c, rule.code);
    case TaskCode::A7: return solve_neighborhood(c);
    default: throw ParameterError("solve_cube expects a rule in A5..A7");
  }
}

std::int64_t solve_rule_oracle(const TaskInstance& inst) {
  if (!is_algebra(inst.task_code)) {
    throw ParameterError("solve_rule_oracle expects an algebra instance");
  }
  const Json& gp = inst.gen_params;
  RuleSpec rule = rule_from_json(gp);
  require(rule.code == inst.task_code, "gen_params rule differs from task_code");
  if (is_matrix_rule(rule.code)) return solve_grid(grid_from_json(gp), rule);
  return solve_cube(cube_from_json(gp), rule);
}

}  // namespace rel::algebra
