#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "rel/epistasis/walsh.hpp"

namespace rel::epistasis {

enum class StructureClass {
  // k = 2
  kPositive,
  kNegative,
  kIndependent,
  // k >= 3: no salient interaction at all
  kNone,
  // k = 3
  kDominantPair,
  kThreeWay,
  kHub,
  // k = 4
  kPairIndependent,
  kTrioIndependent,
  kHubIndependent,
  kBroadCoupling,
  // k >= 5
  kMostlyIndependent,
  kAdditionalGroup,
  kBroadlyCoupled,
};

std::string_view to_string(StructureClass c);
StructureClass parse_structure_class(std::string_view s);

// Every class a k-landscape can take, in fixed option order.
std::vector<StructureClass> classes_for_k(int k);

struct StructureLabel {
  StructureClass cls = StructureClass::kIndependent;
  std::uint32_t s2 = 0;  // dominant pair mask
  std::uint32_t s3 = 0;  // strongest trio containing s2; 0 when k < 3
  std::vector<double> interaction;  // I(i)
  std::vector<bool> independent;    // I(i) < tau
  int hub = -1;  // mutation in the most salient pairs, ties to lowest index
};

// Throws ParameterError for k < 2. Exact ties go to the lexicographically
// smallest subset.
StructureLabel classify_structure(const WalshSpectrum& spec, int k);

}  // namespace rel::epistasis
