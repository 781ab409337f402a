#include <algorithm>
#include <cmath>

#include "rel/core/error.hpp"
#include "rel/epistasis/walsh.hpp"

namespace rel::epistasis {

std::string genotype_string(std::uint32_t mask, int k) {
  std::string s(k, '0');
  for (int i = 0; i < k; ++i) {
    if (mask >> i & 1u) s[i] = '1';
  }
  return s;
}

std::uint32_t genotype_mask(const std::string& bits) {
  if (bits.empty() || bits.size() > 20) {
    throw ParseError("genotype must hold 1..20 bits");
  }
  std::uint32_t mask = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      mask |= 1u << i;
    } else if (bits[i] != '0') {
      throw ParseError("genotype '" + bits + "' is not a bitstring");
    }
  }
  return mask;
}

void check_landscape(const LocalLandscape& land) {
  if (land.k < 1 || land.k > 20) throw ParameterError("k must lie in [1, 20]");
  if (land.fitness.size() != (std::size_t{1} << land.k)) {
    throw ParameterError("landscape must hold 2^k fitness values");
  }
  if (land.labels.size() != static_cast<std::size_t>(land.k)) {
    throw ParameterError("landscape must name all k mutations");
  }
  for (double f : land.fitness) {
    if (!std::isfinite(f)) throw ParameterError("fitness values must be finite");
  }
}

WalshSpectrum mobius_coefficients(const LocalLandscape& land,
                                  double tau_factor) {
  check_landscape(land);
  WalshSpectrum w;
  w.k = land.k;
  w.coefficients = land.fitness;
  const std::size_t n = w.coefficients.size();
  for (int i = 0; i < land.k; ++i) {
    const std::size_t bit = std::size_t{1} << i;
    for (std::size_t m = 0; m < n; ++m) {
      if (m & bit) w.coefficients[m] -= w.coefficients[m ^ bit];
    }
  }
  auto [lo, hi] = std::minmax_element(land.fitness.begin(), land.fitness.end());
  w.delta = *hi - *lo;
  w.tau = tau_factor * w.delta;
  return w;
}

std::vector<double> reconstruct_fitness(const std::vector<double>& coeffs) {
  std::vector<double> f = coeffs;
  for (std::size_t bit = 1; bit < f.size(); bit <<= 1) {
    for (std::size_t m = 0; m < f.size(); ++m) {
      if (m & bit) f[m] += f[m ^ bit];
    }
  }
  return f;
}

}  // namespace rel::epistasis
