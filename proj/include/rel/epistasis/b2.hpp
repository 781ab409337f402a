#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rel/core/rng.hpp"
#include "rel/core/task.hpp"
#include "rel/epistasis/classify.hpp"
#include "rel/epistasis/walsh.hpp"

namespace rel::epistasis {

// Builds a landscape of the requested class by inverse transform from a
// random spectrum shaped like `target`, adds uniform noise in
// [-noise, noise], and redraws until the classifier agrees. Throws
// ParameterError if that does not happen within `max_tries`.
LocalLandscape synth_landscape(int k, StructureClass target, double noise,
                               SeededRng& rng, int max_tries = 200);

std::vector<std::string> default_labels(int k, SeededRng& rng);

std::string verbalize(StructureClass cls, const StructureLabel& label,
                      const std::vector<std::string>& names);

std::string render_b2_prompt(const LocalLandscape& land,
                             const std::vector<std::string>& options);

struct B2Options {
  double tau_factor = kDefaultTauFactor;
  std::string source = "synthetic";
};

// Fitness is rounded to the 6 printed decimals before classification so
// the answer follows from exactly the numbers the prompt shows.
TaskInstance gen_b2(const LocalLandscape& land, SeededRng rng,
                    const B2Options& opts = {});

// Letter the response commits to; nullopt when absent or ambiguous.
std::optional<char> parse_letter(std::string_view text, int n_options);

struct B2Score {
  bool correct = false;
  std::optional<char> parsed;
};

B2Score score_b2(const TaskInstance& inst, std::string_view text);

}  // namespace rel::epistasis
