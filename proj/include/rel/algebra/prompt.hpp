#pragma once

#include <string>

#include "rel/algebra/generate.hpp"

namespace rel::algebra {

std::string render_matrix_prompt(const Grid& g, const CandidateSet& cands,
                                 MatrixFormat format);
std::string render_tensor_prompt(const Cube& c, const CandidateSet& cands);

}  // namespace rel::algebra
