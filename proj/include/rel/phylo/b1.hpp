#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "rel/core/rng.hpp"
#include "rel/core/task.hpp"
#include "rel/phylo/evolve.hpp"
#include "rel/phylo/tree.hpp"

namespace rel::phylo {

struct B1Params {
  int n_leaves = 50;
  int l_seq = 1000;
  int l_motif = 50;
  int n_ht = 2;
  double negative_rate = 0.5;
  std::string label_prefix;
  int max_draws = 10000;  // rejection-sampling cap for the taxa
  int min_distance = 3;

  bool operator==(const B1Params&) const = default;
};

struct HomoplasyPlan {
  int n_ht = 0;
  std::string motif;
  int start_col = 1;  // 1-based
  std::set<std::string> taxa;
};

// Uniform n_ht-subsets of leaves, redrawn until every pair is at least
// `min_distance` edges apart. Throws ParameterError after `max_draws`.
std::set<std::string> choose_distant_taxa(const PhyloTree& tree, int n_ht,
                                          int min_distance, int max_draws,
                                          SeededRng& rng);

void inject_motif(Alignment& aln, const HomoplasyPlan& plan);

std::string render_b1_prompt(const Alignment& aln, const PhyloTree& tree);

// Prompt sentence before which the structured scaffold is inserted.
inline constexpr std::string_view kB1ReturnSentence =
    "Return your answer as: Yes/No and if Yes, list the taxa involved.";

TaskInstance gen_b1(const B1Params& params, SeededRng rng);

struct B1Response {
  bool parsed = false;
  bool yes = false;
  std::set<std::string> taxa;
};

// Leading Yes/No word, then every taxon-shaped token after it.
B1Response parse_b1(std::string_view text, std::string_view label_prefix = "");

struct B1Score {
  bool correct = false;
  B1Response response;
};

B1Score score_b1(const TaskInstance& inst, std::string_view text);

// One-at-a-time sweep around a baseline. Each value of each varied list is
// a configuration (baseline included) and gets `per_config` instances.
struct B1Schedule {
  B1Params baseline;
  std::vector<std::pair<std::string, std::vector<int>>> vary;
  int per_config = 104;
};

B1Schedule b1_schedule_from_json(const Json& j);
std::vector<B1Params> expand_schedule(const B1Schedule& s);
B1Params b1_params_from_json(const Json& j, const B1Params& base = {});

// Generates every instance of the schedule; instance i uses
// rng.split(i). `threads` = 0 picks the hardware concurrency.
std::vector<TaskInstance> gen_b1_sweep(const B1Schedule& s, SeededRng rng,
                                       unsigned threads = 0);

}  // namespace rel::phylo
