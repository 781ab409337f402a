#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "rel/chem/bank.hpp"
#include "rel/chem/features.hpp"
#include "rel/core/rng.hpp"
#include "rel/core/task.hpp"

namespace rel::chem {

// ---- generation ------------------------------------------------------------

struct C1Params {
  int n_molecules = 5;
  std::optional<bool> yes;  // unset: fair coin
  std::size_t min_isomers = 5;
  std::size_t max_isomers = 100;
};

struct C2Params {
  int n_molecules = 5;
  double sim_lo = 0.35;
  double sim_hi = 0.90;
  int min_mcs_atoms = 8;
  int max_tries = 200;
  double mcs_time_budget_s = 10.0;
};

struct C3Params {
  int n_molecules = 5;  // observed
  std::size_t min_isomers = 8;
  std::size_t max_isomers = 100;
};

struct C4Params {
  int n_molecules = 5;
  FgKind fg_kind = FgKind::kCarboxylicAcid;
  std::optional<int> target;  // unset: uniform over feasible totals
  int min_motif_atoms = 6;
  int max_radius = 3;
  int max_tries = 200;
};

C1Params c1_params_from_json(const Json& j);
C2Params c2_params_from_json(const Json& j);
C3Params c3_params_from_json(const Json& j);
C4Params c4_params_from_json(const Json& j);

std::string render_c1_prompt(const std::vector<std::string>& smiles);
std::string render_c2_prompt(const std::vector<std::string>& smiles);
std::string render_c3_prompt(const std::vector<std::string>& smiles);
std::string render_c4_prompt(const std::vector<std::string>& smiles, FgKind kind,
                             int target);

// Throw ParameterError when no pool formula or bank sample satisfies the
// parameters within the retry bound.
TaskInstance gen_c1(const std::vector<PoolEntry>& pool, IsomerCache& cache,
                    const C1Params& p, SeededRng rng);
TaskInstance gen_c2(const MoleculeBank& bank, const C2Params& p, SeededRng rng);
TaskInstance gen_c3(const std::vector<PoolEntry>& pool, IsomerCache& cache,
                    const C3Params& p, SeededRng rng);
TaskInstance gen_c4(const MoleculeBank& bank, const C4Params& p, SeededRng rng);

struct Motif {
  std::string smiles;  // canonical
  int n_atoms = 0;
  int count = 0;       // functional groups of the requested kind
};

// Connected motifs of at least `min_atoms` atoms: balls of radius
// 1..max_radius around every atom (whole molecule included), widened until
// their aromatic systems stand alone. Deduplicated, sorted by SMILES.
std::vector<Motif> candidate_motifs(const MolGraph& mol, FgKind kind,
                                    int min_atoms, int max_radius);

// Totals reachable by picking one value from each set.
std::set<int> feasible_totals(const std::vector<std::set<int>>& per_molecule);

// ---- scoring ---------------------------------------------------------------

struct C1Score {
  bool correct = false;
  std::optional<bool> parsed;  // unset: neither or both tags present
};
C1Score score_c1(const TaskInstance& inst, std::string_view text);

struct C2Score {
  double substructure = 0.0;  // 0, 0.5 or 1
  bool exact = false;         // canonical match
  std::optional<std::string> parsed;
};
C2Score score_c2(const TaskInstance& inst, std::string_view text);

struct C3Score {
  double recall = 0.0;
  double precision = 0.0;
  double f1 = 0.0;
  std::set<std::string> predicted;  // canonical, valid
  std::size_t n_invalid = 0;        // distinct unparseable entries
};
C3Score score_c3(const TaskInstance& inst, std::string_view text);

// Criteria are checked in order; `failed` names the first one violated.
enum class C4Criterion { kNone = 0, kValid = 1, kSubstructure = 2, kSize = 3, kTarget = 4 };
std::string_view to_string(C4Criterion c);

struct C4Score {
  bool complete = false;
  C4Criterion failed = C4Criterion::kNone;
  int total = 0;  // summed count when criteria 1-3 hold
  std::map<int, std::string> motifs;
};
C4Score score_c4(const TaskInstance& inst, std::string_view text);

// Tag helpers shared with the harness.
std::vector<std::string> extract_tagged(std::string_view text, std::string_view tag);
std::map<int, std::string> extract_motifs(std::string_view text);

}  // namespace rel::chem
