#pragma once

#include <map>
#include <string>
#include <vector>

#include "rel/analysis/design.hpp"

namespace rel::analysis {

struct OlsFit {
  std::vector<double> beta;  // intercept first, then the chosen columns
  double r2 = 0.0;
  bool rank_deficient = false;  // ridge fallback was used
};

// Least squares of y on an intercept plus the given columns of X.
OlsFit fit_columns(const DesignMatrix& X, const std::vector<std::size_t>& cols);

struct GroupStats {
  std::string group;
  std::size_t df = 0;
  double r2_without = 0.0;
  double delta_r2 = 0.0;
  double share = 0.0;  // NaN when the full R^2 is not positive
  double gvif = 1.0;   // plain VIF when df == 1; +inf under perfect collinearity
  double gvif_adj = 1.0;  // gvif^(1/(2 df))
};

struct FitResult {
  std::vector<std::string> names;  // "(intercept)" then columns
  std::vector<double> coefficients;
  double r2_full = 0.0;
  bool rank_deficient = false;
  std::vector<GroupStats> groups;
  std::vector<std::string> notes;
};

FitResult fit_ols(const DesignMatrix& X);

// (R^2_full - R^2_without_g) / R^2_full, clipped at 0.
std::map<std::string, double> unique_variance_shares(const DesignMatrix& X);

// det(R_gg) det(R_oo) / det(R) over the predictor correlation matrix.
std::map<std::string, double> gvif(const DesignMatrix& X);

std::string fit_tsv(const FitResult& fit);
std::string fit_text(const FitResult& fit);

}  // namespace rel::analysis
