#pragma once

#include "rel/algebra/types.hpp"
#include "rel/core/rng.hpp"
#include "rel/core/task.hpp"

namespace rel::algebra {

enum class MatrixFormat {
  kRows,  // "row 1: a, b, c; row 2: ..."
  kPipe,  // "[a, b, c] | [...] | ..."
};

struct MatrixOptions {
  RuleSpec rule;
  int n = 3;
  ValueDomain domain{100, 999};
  MatrixFormat format = MatrixFormat::kRows;
  // Half-width of the distractor window; 0 picks the per-rule default.
  std::int64_t distractor_radius = 0;
  // A2 step magnitude range used when rule.increment is unset.
  ValueDomain increment_range{1, 20};
};

struct TensorOptions {
  RuleSpec rule;
  int n = 3;
  int k_slices = 3;
  // Values of the first slice (A5). A6 draws from [0, modulus).
  ValueDomain seed_domain{1, 9};
  int restart_cap = 50;
  int max_sweeps = 1000;
};

// RandomDistractor: uniform over `domain`, resampled on collision, then
// shuffled. Throws ParameterError if fewer than 8 values are available or
// `correct` lies outside the domain.
CandidateSet build_candidates(std::int64_t correct, ValueDomain domain,
                              SeededRng& rng);

// A1-A4 matrices.
Grid generate_grid(const MatrixOptions& opts, RuleSpec& resolved,
                   SeededRng& rng);
TaskInstance gen_matrix_task(const MatrixOptions& opts, SeededRng rng);

// A5-A7 tensors.
struct SweepStats {
  int sweeps = 0;
  int restarts = 0;
  bool literal_init = true;  // converged from the plain random start
};
Cube generate_cube(const TensorOptions& opts, SeededRng& rng,
                   SweepStats* stats = nullptr);
TaskInstance gen_tensor_task(const TensorOptions& opts, SeededRng rng);

// One in-place Gauss-Seidel sweep of the A7 constraint; returns how many
// cells changed.
int neighborhood_sweep(Cube& cube);

// Distractor window used by the generators for a given hidden value.
ValueDomain distractor_domain(const RuleSpec& rule, std::int64_t correct,
                              std::int64_t radius);

Json grid_to_json(const Grid& g);
Grid grid_from_json(const Json& gp);
Json cube_to_json(const Cube& c);
Cube cube_from_json(const Json& gp);
RuleSpec rule_from_json(const Json& gp);

}  // namespace rel::algebra
