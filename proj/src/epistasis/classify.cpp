#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "rel/core/error.hpp"
#include "rel/epistasis/classify.hpp"

namespace rel::epistasis {
namespace {

struct Named {
  StructureClass cls;
  std::string_view name;
};

constexpr Named kNames[] = {
    {StructureClass::kPositive, "positive"},
    {StructureClass::kNegative, "negative"},
    {StructureClass::kIndependent, "independent"},
    {StructureClass::kNone, "none"},
    {StructureClass::kDominantPair, "dominant_pair"},
    {StructureClass::kThreeWay, "three_way"},
    {StructureClass::kHub, "hub"},
    {StructureClass::kPairIndependent, "pair_independent"},
    {StructureClass::kTrioIndependent, "trio_independent"},
    {StructureClass::kHubIndependent, "hub_independent"},
    {StructureClass::kBroadCoupling, "broad_coupling"},
    {StructureClass::kMostlyIndependent, "mostly_independent"},
    {StructureClass::kAdditionalGroup, "additional_group"},
    {StructureClass::kBroadlyCoupled, "broadly_coupled"},
};

std::vector<int> members(std::uint32_t m) {
  std::vector<int> out;
  for (int i = 0; m; ++i, m >>= 1) {
    if (m & 1u) out.push_back(i);
  }
  return out;
}

// All masks of the given size, ordered lexicographically by member list.
std::vector<std::uint32_t> subsets_of_size(int k, int size) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t m = 0; m < (1u << k); ++m) {
    if (std::popcount(m) == size) out.push_back(m);
  }
  std::sort(out.begin(), out.end(), [](std::uint32_t a, std::uint32_t b) {
    return members(a) < members(b);
  });
  return out;
}

}  // namespace

std::string_view to_string(StructureClass c) {
  for (const Named& n : kNames) {
    if (n.cls == c) return n.name;
  }
  return "unknown";
}

StructureClass parse_structure_class(std::string_view s) {
  for (const Named& n : kNames) {
    if (n.name == s) return n.cls;
  }
  throw ParseError("unknown structure class '" + std::string(s) + "'");
}

std::vector<StructureClass> classes_for_k(int k) {
  using C = StructureClass;
  if (k < 2) throw ParameterError("structure classes need k >= 2");
  if (k == 2) return {C::kPositive, C::kNegative, C::kIndependent};
  if (k == 3) return {C::kDominantPair, C::kThreeWay, C::kHub, C::kNone};
  if (k == 4) {
    return {C::kPairIndependent, C::kTrioIndependent, C::kHubIndependent,
            C::kBroadCoupling, C::kNone};
  }
  return {C::kMostlyIndependent, C::kAdditionalGroup, C::kBroadlyCoupled,
          C::kNone};
}

StructureLabel classify_structure(const WalshSpectrum& spec, int k) {
  if (k < 2) throw ParameterError("classification needs k >= 2");
  if (spec.k != k || spec.coefficients.size() != (std::size_t{1} << k)) {
    throw ParameterError("spectrum size does not match k");
  }
  const auto& w = spec.coefficients;
  auto salient = [&](std::uint32_t m) { return std::abs(w[m]) > spec.tau; };
  const std::uint32_t full = (1u << k) - 1;

  StructureLabel out;
  double best = -1.0;
  for (std::uint32_t m : subsets_of_size(k, 2)) {
    if (std::abs(w[m]) > best) {
      best = std::abs(w[m]);
      out.s2 = m;
    }
  }
  if (k >= 3) {
    best = -1.0;
    for (std::uint32_t m : subsets_of_size(k, 3)) {
      if ((m & out.s2) == out.s2 && std::abs(w[m]) > best) {
        best = std::abs(w[m]);
        out.s3 = m;
      }
    }
  }
  out.interaction.assign(k, 0.0);
  bool any_salient = false;
  for (std::uint32_t m = 0; m <= full; ++m) {
    if (std::popcount(m) < 2) continue;
    any_salient = any_salient || salient(m);
    for (int i : members(m)) {
      out.interaction[i] = std::max(out.interaction[i], std::abs(w[m]));
    }
  }
  for (int i = 0; i < k; ++i) {
    out.independent.push_back(out.interaction[i] < spec.tau);
  }
  std::vector<int> pair_count(k, 0);
  for (std::uint32_t m : subsets_of_size(k, 2)) {
    if (!salient(m)) continue;
    for (int i : members(m)) ++pair_count[i];
  }
  out.hub = static_cast<int>(
      std::max_element(pair_count.begin(), pair_count.end()) -
      pair_count.begin());
  const bool has_hub = pair_count[out.hub] >= 2;

  using C = StructureClass;
  if (k == 2) {
    if (!salient(out.s2)) {
      out.cls = C::kIndependent;
    } else {
      out.cls = w[out.s2] > 0 ? C::kPositive : C::kNegative;
    }
    return out;
  }
  if (!any_salient) {
    out.cls = C::kNone;
    return out;
  }
  if (k == 3) {
    out.cls = salient(out.s3) ? C::kThreeWay
              : has_hub       ? C::kHub
                              : C::kDominantPair;
    return out;
  }
  if (k == 4) {
    int fourth = std::countr_zero(full & ~out.s3);
    if (!out.independent[fourth]) {
      out.cls = C::kBroadCoupling;
    } else {
      out.cls = salient(out.s3) ? C::kTrioIndependent
                : has_hub       ? C::kHubIndependent
                                : C::kPairIndependent;
    }
    return out;
  }
  const std::uint32_t rest = full & ~out.s3;
  int dependent = 0;
  for (int i : members(rest)) {
    if (!out.independent[i]) ++dependent;
  }
  if (dependent <= 1) {
    out.cls = C::kMostlyIndependent;
    return out;
  }
  bool group_inside = false;
  bool straddles = false;
  for (std::uint32_t m = 0; m <= full; ++m) {
    if (std::popcount(m) < 2 || !salient(m)) continue;
    if ((m & rest) == m) group_inside = true;
    if ((m & rest) && (m & out.s3)) straddles = true;
  }
  out.cls = group_inside && !straddles ? C::kAdditionalGroup
                                       : C::kBroadlyCoupled;
  return out;
}

}  // namespace rel::epistasis
