#include <array>

#include "rel/algebra/generate.hpp"
#include "rel/algebra/types.hpp"
#include "rel/core/error.hpp"

namespace rel::algebra {
namespace {

// Previous slice: self, up, down, left (toroidal).
constexpr std::array<StencilOffset, 4> kMovingSum4 = {{
    {-1, 0, 0}, {-1, -1, 0}, {-1, 1, 0}, {-1, 0, -1}}};
// Previous slice: self, up, down, left, right (toroidal).
constexpr std::array<StencilOffset, 5> kMovingSum5 = {{
    {-1, 0, 0}, {-1, -1, 0}, {-1, 1, 0}, {-1, 0, -1}, {-1, 0, 1}}};
// Same slice: the 4-connected toroidal neighbourhood.
constexpr std::array<StencilOffset, 4> kNeighborhood = {{
    {0, -1, 0}, {0, 1, 0}, {0, 0, -1}, {0, 0, 1}}};

}  // namespace

std::span<const StencilOffset> stencil(TaskCode code) {
  switch (code) {
    case TaskCode::A5: return kMovingSum4;
    case TaskCode::A6: return kMovingSum5;
    case TaskCode::A7: return kNeighborhood;
    default: return {};
  }
}

bool is_matrix_rule(TaskCode c) {
  return c == TaskCode::A1 || c == TaskCode::A2 || c == TaskCode::A3 ||
         c == TaskCode::A4;
}

bool is_tensor_rule(TaskCode c) {
  return c == TaskCode::A5 || c == TaskCode::A6 || c == TaskCode::A7;
}

Json grid_to_json(const Grid& g) {
  Json rows = Json::array();
  for (int r = 0; r < g.n; ++r) {
    Json row = Json::array();
    for (int c = 0; c < g.n; ++c) {
      if (r == g.missing_row && c == g.missing_col) {
        row.push_back(nullptr);
      } else {
        row.push_back(g.at(r, c));
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Grid grid_from_json(const Json& gp) {
  Grid g;
  g.n = gp.at("n").get<int>();
  const Json& rows = gp.at("cells");
  if (!rows.is_array() || static_cast<int>(rows.size()) != g.n) {
    throw ParseError("grid: expected n rows");
  }
  g.cells.assign(static_cast<std::size_t>(g.n) * g.n, 0);
  int missing = 0;
  for (int r = 0; r < g.n; ++r) {
    const Json& row = rows[r];
    if (!row.is_array() || static_cast<int>(row.size()) != g.n) {
      throw ParseError("grid: expected n columns");
    }
    for (int c = 0; c < g.n; ++c) {
      if (row[c].is_null()) {
        g.missing_row = r;
        g.missing_col = c;
        ++missing;
      } else {
        g.at(r, c) = row[c].get<std::int64_t>();
      }
    }
  }
  if (missing != 1) throw ParseError("grid: expected exactly one hidden cell");
  return g;
}

Json cube_to_json(const Cube& cube) {
  Json slices = Json::array();
  for (int s = 0; s < cube.k_slices; ++s) {
    Json rows = Json::array();
    for (int r = 0; r < cube.n; ++r) {
      Json row = Json::array();
      for (int c = 0; c < cube.n; ++c) {
        if (s == cube.missing_slice && r == cube.missing_row &&
            c == cube.missing_col) {
          row.push_back(nullptr);
        } else {
          row.push_back(cube.at(s, r, c));
        }
      }
      rows.push_back(std::move(row));
    }
    slices.push_back(std::move(rows));
  }
  return slices;
}

Cube cube_from_json(const Json& gp) {
  Cube cube;
  cube.n = gp.at("n").get<int>();
  cube.k_slices = gp.at("k_slices").get<int>();
  cube.modulus = gp.value("modulus", 0);
  cube.maxval = gp.value("maxval", std::int64_t{0});
  const Json& slices = gp.at("cells");
  if (!slices.is_array() ||
      static_cast<int>(slices.size()) != cube.k_slices) {
    throw ParseError("cube: expected K slices");
  }
  cube.cells.assign(
      static_cast<std::size_t>(cube.k_slices) * cube.n * cube.n, 0);
  int missing = 0;
  for (int s = 0; s < cube.k_slices; ++s) {
    const Json& rows = slices[s];
    if (!rows.is_array() || static_cast<int>(rows.size()) != cube.n) {
      throw ParseError("cube: expected n rows per slice");
    }
    for (int r = 0; r < cube.n; ++r) {
      const Json& row = rows[r];
      if (!row.is_array() || static_cast<int>(row.size()) != cube.n) {
        throw ParseError("cube: expected n columns per row");
      }
      for (int c = 0; c < cube.n; ++c) {
        if (row[c].is_null()) {
          cube.missing_slice = s;
          cube.missing_row = r;
          cube.missing_col = c;
          ++missing;
        } else {
          cube.at(s, r, c) = row[c].get<std::int64_t>();
        }
      }
    }
  }
  if (missing != 1) throw ParseError("cube: expected exactly one hidden cell");
  return cube;
}

RuleSpec rule_from_json(const Json& gp) {
  RuleSpec rule;
  rule.code = parse_task_code(gp.at("rule").get<std::string>());
  if (gp.contains("increment")) {
    rule.increment = gp.at("increment").get<std::int64_t>();
  }
  if (gp.contains("signs")) rule.signs = gp.at("signs").get<std::vector<int>>();
  rule.window = gp.value("window", 0);
  rule.modulus = gp.value("modulus", 0);
  rule.maxval = gp.value("maxval", std::int64_t{0});
  return rule;
}

}  // namespace rel::algebra
