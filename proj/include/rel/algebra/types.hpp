#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rel/core/task.hpp"

namespace rel::algebra {

// Inclusive integer range.
struct ValueDomain {
  std::int64_t lo = 0;
  std::int64_t hi = 0;

  std::int64_t size() const { return hi >= lo ? hi - lo + 1 : 0; }
  bool contains(std::int64_t v) const { return v >= lo && v <= hi; }
  bool operator==(const ValueDomain&) const = default;
};

// n x n matrix with exactly one hidden cell.
struct Grid {
  int n = 0;
  std::vector<std::int64_t> cells;  // row-major, hidden cell keeps its value
  int missing_row = 0;
  int missing_col = 0;

  std::int64_t at(int r, int c) const { return cells[r * n + c]; }
  std::int64_t& at(int r, int c) { return cells[r * n + c]; }
  std::int64_t hidden() const { return at(missing_row, missing_col); }
};

// n x n x K tensor; slice-major then row-major.
struct Cube {
  int n = 0;
  int k_slices = 0;
  std::vector<std::int64_t> cells;
  int missing_slice = 0;
  int missing_row = 0;
  int missing_col = 0;
  std::int64_t maxval = 0;
  int modulus = 0;  // 0 = no reduction

  std::size_t index(int s, int r, int c) const {
    return (static_cast<std::size_t>(s) * n + r) * n + c;
  }
  std::int64_t at(int s, int r, int c) const { return cells[index(s, r, c)]; }
  std::int64_t& at(int s, int r, int c) { return cells[index(s, r, c)]; }
  std::int64_t hidden() const {
    return at(missing_slice, missing_row, missing_col);
  }
};

// Rule code plus the constants the rule needs.
struct RuleSpec {
  TaskCode code = TaskCode::A1;
  // A2: signed step between neighbours in a row. Sampled when absent.
  std::optional<std::int64_t> increment;
  // A4: per-column sign for columns 0..n-2. Sampled when empty.
  std::vector<int> signs;
  // A5 = 4, A6 = 5.
  int window = 0;
  // A6 reduction (11 in the published examples) and the A7 prime.
  int modulus = 0;
  // A7 initial-value and distractor bound.
  std::int64_t maxval = 0;
};

struct CandidateSet {
  std::array<std::int64_t, 8> values{};
  int correct_index = 0;
};

// Row/column offset of a stencil operand inside a slice; `slice` is the
// slice offset (0 = same slice, -1 = previous).
struct StencilOffset {
  int slice = 0;
  int row = 0;
  int col = 0;
};

// Operands of the A5/A6 moving sums and the A7 neighbourhood.
std::span<const StencilOffset> stencil(TaskCode code);

// Modular reduction onto [0, m).
inline std::int64_t mod_floor(std::int64_t v, std::int64_t m) {
  std::int64_t r = v % m;
  return r < 0 ? r + m : r;
}

bool is_matrix_rule(TaskCode c);
bool is_tensor_rule(TaskCode c);

}  // namespace rel::algebra
