#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace rel::epistasis {

// Fitness over {0,1}^k. Index bit i is the state of mutation i (labels[i]);
// in genotype strings character i is that same bit, so x1 reads first.
struct LocalLandscape {
  int k = 0;
  std::vector<std::string> labels;
  std::vector<double> fitness;  // size 2^k
  std::string background_id;

  bool operator==(const LocalLandscape&) const = default;
};

struct WalshSpectrum {
  int k = 0;
  std::vector<double> coefficients;  // W(S) indexed by subset mask
  double delta = 0.0;
  double tau = 0.0;
};

inline constexpr double kDefaultTauFactor = 0.12;

std::string genotype_string(std::uint32_t mask, int k);
std::uint32_t genotype_mask(const std::string& bits);  // throws ParseError

// W(S) = sum over T subset of S of (-1)^{|S|-|T|} f(1_T), computed with the
// in-place subset-difference transform.
WalshSpectrum mobius_coefficients(const LocalLandscape& land,
                                  double tau_factor = kDefaultTauFactor);

// f(1_T) = sum over S subset of T of W(S).
std::vector<double> reconstruct_fitness(const std::vector<double>& coeffs);

void check_landscape(const LocalLandscape& land);

}  // namespace rel::epistasis
