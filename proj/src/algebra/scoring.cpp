#include <cctype>
#include <set>
#include <string>

#include "rel/algebra/scoring.hpp"
#include "rel/core/error.hpp"
#include "rel/core/text.hpp"

namespace rel::algebra {
namespace {

// One number the response mentions; nullopt marks a non-integer such as 7.5.
struct Mention {
  std::size_t pos;
  std::optional<std::int64_t> value;
};

bool is_word(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)); }

std::vector<Mention> scan(std::string_view text,
                          const std::vector<std::int64_t>& candidates) {
  const std::string lower = to_lower(text);
  std::vector<Mention> out;
  std::size_t i = 0;
  while (i < lower.size()) {
    // "Answer #k" refers to a candidate by index.
    if (lower.compare(i, 6, "answer") == 0 && (i == 0 || !is_word(lower[i - 1]))) {
      std::size_t j = i + 6;
      while (j < lower.size() && lower[j] == ' ') ++j;
      if (j < lower.size() && lower[j] == '#') {
        ++j;
        while (j < lower.size() && lower[j] == ' ') ++j;
        std::size_t k0 = j;
        while (j < lower.size() && digit(lower[j])) ++j;
        if (j > k0) {
          auto k = parse_int(lower.substr(k0, j - k0));
          if (k && *k >= 0 && *k < static_cast<std::int64_t>(candidates.size())) {
            out.push_back({i, candidates[*k]});
          } else {
            out.push_back({i, std::nullopt});
          }
          i = j;
          continue;
        }
      }
    }
    if (digit(lower[i]) && (i == 0 || !is_word(lower[i - 1]))) {
      std::size_t start = i;
      bool neg = start > 0 && lower[start - 1] == '-' &&
                 (start == 1 || !is_word(lower[start - 2]));
      std::size_t j = i;
      while (j < lower.size() && digit(lower[j])) ++j;
      std::size_t int_end = j;
      bool fractional = false;
      if (j + 1 < lower.size() && lower[j] == '.' && digit(lower[j + 1])) {
        ++j;
        while (j < lower.size() && digit(lower[j])) {
          if (lower[j] != '0') fractional = true;
          ++j;
        }
      }
      if (j < lower.size() && std::isalpha(static_cast<unsigned char>(lower[j]))) {
        i = j;  // part of a token such as "3rd" or "2x"
        continue;
      }
      std::optional<std::int64_t> v;
      if (!fractional) {
        v = parse_int(lower.substr(start, int_end - start));
        if (v && neg) v = -*v;
      }
      out.push_back({neg ? start - 1 : start, v});
      i = j;
      continue;
    }
    ++i;
  }
  return out;
}

std::optional<std::size_t> last_marker(const std::string& lower) {
  std::optional<std::size_t> best;
  for (std::string_view m : {"final answer", "answer:"}) {
    std::size_t p = lower.rfind(m);
    if (p != std::string::npos) {
      std::size_t end = p + m.size();
      if (!best || end > *best) best = end;
    }
  }
  return best;
}

}  // namespace

std::string_view to_string(ChoiceOutcome o) {
  switch (o) {
    case ChoiceOutcome::kCorrect: return "correct";
    case ChoiceOutcome::kIncorrect: return "incorrect";
    case ChoiceOutcome::kUnparseable: return "unparseable";
  }
  return "unparseable";
}

std::optional<std::int64_t> parse_choice(
    std::string_view response, const std::vector<std::int64_t>& candidates) {
  std::vector<Mention> mentions = scan(response, candidates);
  if (auto marker = last_marker(to_lower(response))) {
    for (const Mention& m : mentions) {
      if (m.pos >= *marker) return m.value;
    }
  }
  std::set<std::optional<std::int64_t>> distinct;
  for (const Mention& m : mentions) distinct.insert(m.value);
  if (distinct.size() != 1) return std::nullopt;
  return *distinct.begin();
}

ChoiceScore score_choice(const TaskInstance& inst, std::string_view response) {
  const auto* ans = std::get_if<ChoiceIndex>(&inst.answer);
  if (!ans) throw ParameterError("score_choice expects a ChoiceIndex answer");
  ChoiceScore s;
  s.parsed = parse_choice(response, ans->candidates);
  if (!s.parsed) {
    s.outcome = ChoiceOutcome::kUnparseable;
  } else {
    s.outcome = *s.parsed == ans->value() ? ChoiceOutcome::kCorrect
                                          : ChoiceOutcome::kIncorrect;
  }
  return s;
}

}  // namespace rel::algebra
