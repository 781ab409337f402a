#include <string>

#include "rel/algebra/prompt.hpp"

namespace rel::algebra {
namespace {

std::string cell_text(bool hidden, std::int64_t v) {
  return hidden ? "?" : std::to_string(v);
}

void append_answers(std::string& out, const CandidateSet& cands) {
  out += "Answer set:";
  for (int k = 0; k < 8; ++k) {
    out += "\nAnswer #" + std::to_string(k) + ": " +
           std::to_string(cands.values[k]);
  }
}

}  // namespace

std::string render_matrix_prompt(const Grid& g, const CandidateSet& cands,
                                 MatrixFormat format) {
  std::string out = "Only return the missing number!\n";
  for (int r = 0; r < g.n; ++r) {
    if (format == MatrixFormat::kRows) {
      out += r ? "; row " : "row ";
      out += std::to_string(r + 1) + ": ";
    } else {
      out += r ? " | [" : "[";
    }
    for (int c = 0; c < g.n; ++c) {
      if (c) out += ", ";
      out += cell_text(r == g.missing_row && c == g.missing_col, g.at(r, c));
    }
    if (format == MatrixFormat::kPipe) out += "]";
  }
  out += "\n";
  append_answers(out, cands);
  return out;
}

std::string render_tensor_prompt(const Cube& c, const CandidateSet& cands) {
  std::string out =
      "Complete the Raven's progressive tensor:\nOnly return the missing "
      "number!\n";
  for (int s = 0; s < c.k_slices; ++s) {
    out += "Slice l=" + std::to_string(s) + ":\n";
    for (int r = 0; r < c.n; ++r) {
      out += "  row " + std::to_string(r + 1) + ": ";
      for (int col = 0; col < c.n; ++col) {
        if (col) out += ", ";
        bool hidden = s == c.missing_slice && r == c.missing_row &&
                      col == c.missing_col;
        out += cell_text(hidden, c.at(s, r, col));
      }
      out += "\n";
    }
    out += "\n";
  }
  append_answers(out, cands);
  return out;
}

}  // namespace rel::algebra
