#include "rel/analysis/ols.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Dense>
#include <fmt/format.h>

#include "rel/core/error.hpp"
#include "rel/core/text.hpp"

namespace rel::analysis {
namespace {

constexpr double kRidge = 1e-10;

Eigen::MatrixXd columns_of(const DesignMatrix& X, const std::vector<std::size_t>& cols) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(X.rows()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t i = 0; i < X.rows(); ++i)
    for (std::size_t c = 0; c < cols.size(); ++c)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) = X.x[i].at(cols[c]);
  return m;
}

std::vector<std::size_t> all_columns(const DesignMatrix& X) {
  std::vector<std::size_t> c(X.cols());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = i;
  return c;
}

std::vector<std::size_t> columns_without(const DesignMatrix& X, int group) {
  std::vector<std::size_t> c;
  for (std::size_t i = 0; i < X.cols(); ++i)
    if (X.group_of[i] != group) c.push_back(i);
  return c;
}

double log_det_corr(const Eigen::MatrixXd& R, bool& singular) {
  if (R.rows() == 0) return 0.0;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(R);
  if (lu.rank() < R.rows()) {
    singular = true;
    return 0.0;
  }
  Eigen::LDLT<Eigen::MatrixXd> ldlt(R);
  double s = 0;
  for (Eigen::Index i = 0; i < R.rows(); ++i) {
    double d = ldlt.vectorD()(i);
    if (d <= 0) {
      singular = true;
      return 0.0;
    }
    s += std::log(d);
  }
  return s;
}

Eigen::MatrixXd sub(const Eigen::MatrixXd& R, const std::vector<Eigen::Index>& idx) {
  Eigen::MatrixXd m(idx.size(), idx.size());
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = 0; b < idx.size(); ++b) m(a, b) = R(idx[a], idx[b]);
  return m;
}

}  // namespace

OlsFit fit_columns(const DesignMatrix& X, const std::vector<std::size_t>& cols) {
  const auto n = static_cast<Eigen::Index>(X.rows());
  const auto p = static_cast<Eigen::Index>(cols.size());
  if (n <= p + 1)
    throw ParameterError(fmt::format("regression needs more rows ({}) than columns ({})", n, p + 1));
  Eigen::VectorXd y = Eigen::Map<const Eigen::VectorXd>(X.y.data(), n);
  const double ybar = y.mean();
  Eigen::VectorXd yc = y.array() - ybar;
  const double sst = yc.squaredNorm();

  OlsFit fit;
  fit.beta.assign(static_cast<std::size_t>(p) + 1, 0.0);
  fit.beta[0] = ybar;
  if (p == 0) return fit;

  // Centred normal equations; the intercept is recovered from the means.
  Eigen::MatrixXd A = columns_of(X, cols);
  Eigen::RowVectorXd xbar = A.colwise().mean();
  A.rowwise() -= xbar;
  Eigen::MatrixXd G = A.transpose() * A;
  Eigen::VectorXd rhs = A.transpose() * yc;

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
  Eigen::VectorXd b;
  if (qr.rank() < p) {
    fit.rank_deficient = true;
    const double scale = std::max(G.diagonal().mean(), 1.0);
    G.diagonal().array() += kRidge * scale;
  }
  b = G.ldlt().solve(rhs);

  for (Eigen::Index j = 0; j < p; ++j) fit.beta[static_cast<std::size_t>(j) + 1] = b(j);
  fit.beta[0] = ybar - xbar.dot(b);
  if (sst > 0) {
    const double ssr = (yc - A * b).squaredNorm();
    fit.r2 = 1.0 - ssr / sst;
  }
  return fit;
}

std::map<std::string, double> gvif(const DesignMatrix& X) {
  std::map<std::string, double> out;
  const auto p = static_cast<Eigen::Index>(X.cols());
  if (p == 0) return out;
  Eigen::MatrixXd A = columns_of(X, all_columns(X));
  A.rowwise() -= A.colwise().mean();
  Eigen::VectorXd sd = A.colwise().norm();
  for (Eigen::Index j = 0; j < p; ++j) A.col(j) /= sd(j);
  Eigen::MatrixXd R = A.transpose() * A;

  bool singular_all = false;
  const double ld_all = log_det_corr(R, singular_all);
  for (int g = 0; g < static_cast<int>(X.groups.size()); ++g) {
    std::vector<Eigen::Index> in, rest;
    for (Eigen::Index j = 0; j < p; ++j) (X.group_of[j] == g ? in : rest).push_back(j);
    if (rest.empty()) {
      out[X.groups[g]] = 1.0;
      continue;
    }
    bool singular = false;
    const double ld_in = log_det_corr(sub(R, in), singular);
    const double ld_rest = log_det_corr(sub(R, rest), singular);
    if (singular_all || singular) {
      out[X.groups[g]] = std::numeric_limits<double>::infinity();
      continue;
    }
    out[X.groups[g]] = std::exp(ld_in + ld_rest - ld_all);
  }
  return out;
}

FitResult fit_ols(const DesignMatrix& X) {
  FitResult r;
  OlsFit full = fit_columns(X, all_columns(X));
  r.names.push_back("(intercept)");
  for (const auto& c : X.columns) r.names.push_back(c);
  r.coefficients = full.beta;
  r.r2_full = full.r2;
  r.rank_deficient = full.rank_deficient;
  if (full.rank_deficient) r.notes.push_back("design is rank deficient; ridge fallback used");
  if (!(r.r2_full > 0)) r.notes.push_back("full-model R^2 is not positive; shares undefined");

  auto vifs = gvif(X);
  for (int g = 0; g < static_cast<int>(X.groups.size()); ++g) {
    GroupStats s;
    s.group = X.groups[g];
    for (int k : X.group_of) s.df += k == g;
    s.r2_without = fit_columns(X, columns_without(X, g)).r2;
    s.delta_r2 = r.r2_full - s.r2_without;
    s.share = r.r2_full > 0 ? std::max(0.0, s.delta_r2) / r.r2_full
                            : std::numeric_limits<double>::quiet_NaN();
    s.gvif = vifs.at(s.group);
    s.gvif_adj = std::isinf(s.gvif) ? s.gvif : std::pow(s.gvif, 1.0 / (2.0 * s.df));
    r.groups.push_back(s);
  }
  for (const auto& w : X.warnings) r.notes.push_back(w);
  return r;
}

std::map<std::string, double> unique_variance_shares(const DesignMatrix& X) {
  std::map<std::string, double> out;
  for (const auto& g : fit_ols(X).groups) out[g.group] = g.share;
  return out;
}

namespace {

std::string num(double v) {
  if (std::isnan(v)) return "NA";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return format_fixed(v, 6);
}

}  // namespace

std::string fit_tsv(const FitResult& fit) {
  std::string out = "group\tdf\tr2_without\tdelta_r2\tshare\tgvif\tgvif_adj\n";
  for (const auto& g : fit.groups) {
    out += fmt::format("{}\t{}\t{}\t{}\t{}\t{}\t{}\n", g.group, g.df, num(g.r2_without),
                       num(g.delta_r2), num(g.share), num(g.gvif), num(g.gvif_adj));
  }
  out += fmt::format("(full)\t{}\t\t\t\t\t\n", num(fit.r2_full));
  return out;
}

std::string fit_text(const FitResult& fit) {
  std::string out = fmt::format("R^2 (full model): {}\n", num(fit.r2_full));
  out += "\nCoefficients\n";
  std::size_t w = 0;
  for (const auto& n : fit.names) w = std::max(w, n.size());
  for (std::size_t i = 0; i < fit.names.size(); ++i)
    out += fmt::format("  {:<{}}  {:>14}\n", fit.names[i], w, num(fit.coefficients[i]));
  out += "\nUnique explainable-variance shares and collinearity\n";
  std::size_t gw = 5;
  for (const auto& g : fit.groups) gw = std::max(gw, g.group.size());
  out += fmt::format("  {:<{}}  {:>3}  {:>10}  {:>10}  {:>10}  {:>10}\n", "group", gw, "df",
                     "delta_r2", "share", "gvif", "gvif_adj");
  for (const auto& g : fit.groups) {
    out += fmt::format("  {:<{}}  {:>3}  {:>10}  {:>10}  {:>10}  {:>10}\n", g.group, gw, g.df,
                       num(g.delta_r2), num(g.share), num(g.gvif), num(g.gvif_adj));
  }
  if (!fit.notes.empty()) {
    out += "\nNotes\n";
    for (const auto& n : fit.notes) out += "  " + n + "\n";
  }
  return out;
}

}  // namespace rel::analysis
