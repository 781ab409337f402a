#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "rel/algebra/generate.hpp"
#include "rel/core/error.hpp"

namespace rel::algebra {

CandidateSet build_candidates(std::int64_t correct, ValueDomain domain,
                              SeededRng& rng) {
  if (domain.size() < 8) {
    throw ParameterError("candidate domain holds fewer than 8 values");
  }
  if (!domain.contains(correct)) {
    throw ParameterError("correct value lies outside the candidate domain");
  }
  std::vector<std::int64_t> values{correct};
  std::unordered_set<std::int64_t> seen{correct};
  while (values.size() < 8) {
    std::int64_t d = rng.uniform_int(domain.lo, domain.hi);
    if (seen.insert(d).second) values.push_back(d);
  }
  rng.shuffle(values);
  CandidateSet out;
  std::copy(values.begin(), values.end(), out.values.begin());
  out.correct_index = static_cast<int>(
      std::find(values.begin(), values.end(), correct) - values.begin());
  return out;
}

ValueDomain distractor_domain(const RuleSpec& rule, std::int64_t correct,
                              std::int64_t radius) {
  switch (rule.code) {
    case TaskCode::A1:
    case TaskCode::A2:
    case TaskCode::A3: {
      std::int64_t r = radius > 0 ? radius : 50;
      return {std::max<std::int64_t>(0, correct - r), correct + r};
    }
    case TaskCode::A4: {
      std::int64_t r = radius > 0
                           ? radius
                           : std::max<std::int64_t>(
                                 50, static_cast<std::int64_t>(std::llround(
                                         0.6 * std::abs(
                                                   static_cast<double>(correct)))));
      return {std::max<std::int64_t>(0, correct - r), correct + r};
    }
    case TaskCode::A5:
      return {0, 2 * std::max<std::int64_t>(correct, 0) + 8};
    case TaskCode::A6:
      return {0, rule.modulus - 1};
    case TaskCode::A7:
      return {0, rule.maxval};
    default:
      throw ParameterError("no distractor domain for non-algebra task");
  }
}

}  // namespace rel::algebra
