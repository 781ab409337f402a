#include "rel/harness/prompt.hpp"

#include "rel/core/error.hpp"
#include "rel/harness/scoring.hpp"
#include "rel/phylo/b1.hpp"

namespace rel::harness {

const char* const kStructuredScaffold =
    "Instruction: You MUST follow these steps in order. Show your work for each step.\n"
    "\n"
    "Step 1 — Motif scanning:\n"
    "Scan through the alignment columns in blocks. For each block of ~10 consecutive "
    "columns, identify which taxa share identical nucleotide patterns (motifs) at those "
    "positions. List the groups of taxa that share motifs.\n"
    "\n"
    "Step 2 — Consistency check:\n"
    "Among the groups you found in Step 1, identify which groups of taxa CONSISTENTLY "
    "share motifs across MANY independent columns (not just a few). A group is "
    "significant only if the same taxa repeatedly co-occur with matching nucleotides "
    "across many columns.\n"
    "\n"
    "Step 3 — Tree distance check:\n"
    "For each consistent group from Step 2, use the provided phylogenetic tree to "
    "determine whether the taxa in that group are closely related (share a recent common "
    "ancestor) or distantly related (separated by long branches). Only groups of "
    "DISTANTLY related taxa constitute homoplasy.\n"
    "\n"
    "Step 4 — Final answer:\n"
    "Based on Steps 1-3, provide your final answer.\n"
    "\n";

std::string render_prompt(const TaskInstance& inst, const PromptOptions& opts) {
  std::string body = inst.prompt;
  if (opts.structured) {
    if (inst.task_code != TaskCode::B1)
      throw ParameterError("structured prompt is only defined for B1");
    auto pos = body.find(phylo::kB1ReturnSentence);
    if (pos == std::string::npos) pos = body.size();
    body.insert(pos, kStructuredScaffold);
  }
  if (!opts.icl_example) return body;

  const TaskInstance& ex = *opts.icl_example;
  if (ex.task_code != inst.task_code)
    throw ParameterError("ICL example " + ex.id + " has task code " +
                         std::string(to_string(ex.task_code)) + ", expected " +
                         std::string(to_string(inst.task_code)));
  if (ex.id == inst.id) throw ParameterError("ICL example must differ from the question");

  std::string out = "Here is a solved example of this task.\n\n### Example question\n\n";
  out += ex.prompt;
  out += "\n\n### Example answer\n\n";
  out += reference_response(ex);
  out += "\n\n### Question\n\n";
  out += body;
  return out;
}

int icl_partner(const std::vector<TaskInstance>& dataset, std::size_t i) {
  const std::size_t n = dataset.size();
  for (std::size_t k = 1; k < n; ++k) {
    std::size_t j = (i + k) % n;
    if (dataset[j].task_code == dataset[i].task_code && dataset[j].id != dataset[i].id)
      return static_cast<int>(j);
  }
  return -1;
}

}  // namespace rel::harness
