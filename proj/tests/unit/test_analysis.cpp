#include <cmath>

#include "doctest.h"
#include "exact_ols.hpp"
#include "rel/analysis/design.hpp"
#include "rel/analysis/ols.hpp"
#include "rel/core/error.hpp"
#include "rel/core/rng.hpp"

using namespace rel;
using namespace rel::analysis;

namespace {

DesignMatrix design(const std::vector<std::vector<double>>& cols, const std::vector<double>& y,
                    std::vector<int> group_of = {}) {
  DesignMatrix X;
  if (group_of.empty())
    for (std::size_t c = 0; c < cols.size(); ++c) group_of.push_back(static_cast<int>(c));
  int ng = 0;
  for (int g : group_of) ng = std::max(ng, g + 1);
  for (int g = 0; g < ng; ++g) X.groups.push_back("g" + std::to_string(g));
  for (std::size_t c = 0; c < cols.size(); ++c) X.columns.push_back("x" + std::to_string(c));
  X.group_of = group_of;
  X.y = y;
  X.x.assign(y.size(), std::vector<double>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (std::size_t i = 0; i < y.size(); ++i) X.x[i][c] = cols[c][i];
  return X;
}

std::vector<double> normals(SeededRng& rng, std::size_t n) {
  std::vector<double> v;
  for (std::size_t i = 0; i < n; ++i) {
    double u1 = rng.uniform01(), u2 = rng.uniform01();
    v.push_back(std::sqrt(-2.0 * std::log(1.0 - u1)) * std::cos(2.0 * M_PI * u2));
  }
  return v;
}

double marginal_r2(const std::vector<double>& x, const std::vector<double>& y) {
  return fit_columns(design({x}, y), {0}).r2;
}

// +-1 columns from a 2^3 full factorial, repeated.
std::vector<std::vector<double>> factorial(int reps) {
  std::vector<std::vector<double>> cols(3);
  for (int r = 0; r < reps; ++r)
    for (int m = 0; m < 8; ++m)
      for (int c = 0; c < 3; ++c) cols[c].push_back((m >> c) & 1 ? 1.0 : -1.0);
  return cols;
}

harness::ScoreRow row(double a, double b, bool correct) {
  harness::ScoreRow r;
  r.task_code = TaskCode::B1;
  r.features = {{"a", a}, {"b", b}, {"flat", 3.0}};
  r.score.correct = correct;
  r.score.score = correct ? 1.0 : 0.0;
  return r;
}

}  // namespace

TEST_CASE("response identical to a predictor") {
  SeededRng rng(1);
  auto x1 = normals(rng, 200), x2 = normals(rng, 200);
  auto X = design({x1, x2}, x1);
  auto f = fit_ols(X);
  CHECK(f.r2_full == doctest::Approx(1.0).epsilon(1e-12));
  auto shares = unique_variance_shares(X);
  // Dropping x1 leaves only x2's chance correlation with y.
  CHECK(shares.at("g0") == doctest::Approx(1.0 - marginal_r2(x2, x1)).epsilon(1e-9));
  CHECK(shares.at("g1") == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(shares.at("g0") > 0.99);
}

TEST_CASE("pure noise explains almost nothing") {
  SeededRng rng(2);
  auto x = normals(rng, 5000), y = normals(rng, 5000);
  CHECK(fit_ols(design({x}, y)).r2_full < 0.002);
}

TEST_CASE("exact fractions agree with the rational solver") {
  SeededRng rng(3);
  std::vector<std::vector<double>> cols(3);
  std::vector<double> y;
  std::vector<std::vector<oracle::Rational>> xr;
  std::vector<oracle::Rational> yr;
  for (int i = 0; i < 30; ++i) {
    std::vector<oracle::Rational> r;
    for (auto& c : cols) {
      int v = rng.uniform_int(-20, 20);
      c.push_back(v);
      r.push_back(v);
    }
    int t = rng.uniform_int(-50, 50);
    y.push_back(t);
    yr.push_back(t);
    xr.push_back(r);
  }
  auto fit = fit_columns(design(cols, y), {0, 1, 2});
  auto exact = oracle::exact_ols(xr, yr);
  for (int j = 0; j < 4; ++j) CHECK(std::abs(fit.beta[j] - exact[j].convert_to<double>()) < 1e-8);
  CHECK_FALSE(fit.rank_deficient);
}

TEST_CASE("orthogonal design: unit VIF and shares track marginal fit") {
  auto cols = factorial(4);
  SeededRng rng(4);
  auto noise = normals(rng, cols[0].size());
  std::vector<double> y;
  for (std::size_t i = 0; i < cols[0].size(); ++i)
    y.push_back(3.0 * cols[0][i] + 1.5 * cols[1][i] + 0.5 * cols[2][i] + 0.3 * noise[i]);
  auto X = design(cols, y);
  auto v = gvif(X);
  for (auto& [g, val] : v) CHECK(std::abs(val - 1.0) < 1e-9);
  auto fit = fit_ols(X);
  auto shares = unique_variance_shares(X);
  for (int c = 0; c < 3; ++c) {
    double m = marginal_r2(cols[c], y);
    CHECK(shares.at("g" + std::to_string(c)) ==
          doctest::Approx(m / fit.r2_full).epsilon(1e-9));
  }
}

TEST_CASE("collinear predictors") {
  SeededRng rng(5);
  auto x1 = normals(rng, 400), e = normals(rng, 400), z = normals(rng, 400);
  std::vector<double> y, dup = x1, near, rho;
  for (std::size_t i = 0; i < x1.size(); ++i) {
    y.push_back(x1[i] + 0.5 * e[i]);
    near.push_back(x1[i] + 1e-3 * z[i]);
    rho.push_back(0.9 * x1[i] + std::sqrt(1 - 0.81) * z[i]);
  }
  SUBCASE("exact duplicate") {
    auto X = design({x1, dup}, y);
    auto fit = fit_ols(X);
    CHECK(fit.rank_deficient);
    for (auto& [g, s] : unique_variance_shares(X)) CHECK(s < 1e-6);
    CHECK(std::isinf(gvif(X).at("g0")));
  }
  SUBCASE("near duplicate") {
    auto v = gvif(design({x1, near}, y));
    CHECK(v.at("g0") > 10.0);
    CHECK(v.at("g1") > 10.0);
  }
  SUBCASE("rho 0.9") {
    auto v = gvif(design({x1, rho}, y));
    double r = 0;
    {
      double mx = 0, my = 0;
      for (std::size_t i = 0; i < x1.size(); ++i) mx += x1[i], my += rho[i];
      mx /= x1.size(), my /= x1.size();
      double sxy = 0, sxx = 0, syy = 0;
      for (std::size_t i = 0; i < x1.size(); ++i) {
        sxy += (x1[i] - mx) * (rho[i] - my);
        sxx += (x1[i] - mx) * (x1[i] - mx);
        syy += (rho[i] - my) * (rho[i] - my);
      }
      r = sxy / std::sqrt(sxx * syy);
    }
    CHECK(v.at("g0") == doctest::Approx(1.0 / (1.0 - r * r)).epsilon(1e-9));
    CHECK(v.at("g0") == doctest::Approx(5.26).epsilon(0.25));
  }
}

TEST_CASE("planted dominant predictor gets the largest share") {
  SeededRng rng(6);
  const std::size_t n = 3000;
  std::vector<double> rc, len, noise_col, y;
  for (std::size_t i = 0; i < n; ++i) {
    rc.push_back(rng.uniform_int(1, 8));
    len.push_back(rng.uniform_real(100, 2000));
    noise_col.push_back(rng.uniform01());
    double p = 0.95 - 0.1 * rc.back() + 0.00002 * len.back();
    y.push_back(rng.bernoulli(std::clamp(p, 0.0, 1.0)) ? 1.0 : 0.0);
  }
  auto shares = unique_variance_shares(design({rc, len, noise_col}, y));
  CHECK(shares.at("g0") > shares.at("g1"));
  CHECK(shares.at("g0") > shares.at("g2"));
  CHECK(shares.at("g0") > 0.8);
}

TEST_CASE("affine rescaling leaves R^2 alone and removal never helps") {
  SeededRng rng(7);
  auto a = normals(rng, 300), b = normals(rng, 300), e = normals(rng, 300);
  std::vector<double> y, a2, b2;
  for (std::size_t i = 0; i < a.size(); ++i) {
    y.push_back(a[i] - 0.7 * b[i] + e[i]);
    a2.push_back(40.0 * a[i] - 7.0);
    b2.push_back(-0.01 * b[i] + 1000.0);
  }
  auto f1 = fit_ols(design({a, b}, y));
  auto f2 = fit_ols(design({a2, b2}, y));
  CHECK(f1.r2_full == doctest::Approx(f2.r2_full).epsilon(1e-9));
  for (const auto& g : f1.groups) {
    CHECK(g.delta_r2 >= 0.0);
    CHECK(g.r2_without <= f1.r2_full + 1e-12);
  }
}

TEST_CASE("GVIF for an indicator group") {
  auto cols = factorial(3);
  // Two indicators from a three-level factor orthogonal to x0.
  std::vector<double> d1, d2, y;
  for (std::size_t i = 0; i < cols[0].size(); ++i) {
    int level = static_cast<int>(i % 3);
    d1.push_back(level == 1);
    d2.push_back(level == 2);
    y.push_back(cols[0][i] + level);
  }
  auto X = design({cols[0], d1, d2}, y, {0, 1, 1});
  auto fit = fit_ols(X);
  REQUIRE(fit.groups.size() == 2);
  CHECK(fit.groups[1].df == 2);
  CHECK(fit.groups[0].gvif == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(fit.groups[1].gvif == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(fit.groups[1].gvif_adj == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(fit.r2_full == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("too few rows is an error") {
  CHECK_THROWS_AS(fit_ols(design({{1, 2}, {3, 5}}, {1, 2})), ParameterError);
}

TEST_CASE("design building") {
  std::vector<harness::ScoreRow> rows;
  for (int i = 0; i < 20; ++i) rows.push_back(row(i, i % 4, i % 3 == 0));
  rows[5].flagged = true;
  rows[6].features.erase("b");

  auto spec = design_spec_from_json(Json::parse(R"({"response": "correct", "groups": [
    {"name": "a", "feature": "a"},
    {"name": "b", "feature": "b", "bins": [0, 1, 2, 4]},
    {"name": "flat", "feature": "flat"}]})"));
  REQUIRE(spec.predictors.size() == 3);
  CHECK(spec.predictors[1].kind == PredictorKind::kBinned);
  auto X = build_design(rows, spec);
  CHECK(X.rows() == 18);
  CHECK(X.dropped_rows == 2);
  CHECK(X.groups == std::vector<std::string>{"a", "b"});
  CHECK(X.cols() == 3);  // a plus two indicators for b
  CHECK(X.columns[1] == "b[1,2)");
  CHECK(X.warnings.size() >= 1);
  for (std::size_t i = 0; i < X.rows(); ++i) CHECK(X.x[i][1] + X.x[i][2] <= 1.0);

  CHECK(bin_index({0, 1, 2}, -5) == 0);
  CHECK(bin_index({0, 1, 2}, 1.5) == 1);
  CHECK(bin_index({0, 1, 2}, 2) == 1);
  CHECK(bin_index({0, 1, 2}, 9) == 1);
  auto q = quantile_edges({1, 2, 3, 4, 5}, 4);
  CHECK(q == std::vector<double>{1, 2, 3, 4, 5});

  auto other = design_spec_from_json(Json::parse(
      R"({"response": "score", "task_code": "A1", "groups": [{"name": "a", "feature": "a"}]})"));
  CHECK(build_design(rows, other).rows() == 0);
  auto text = fit_text(fit_ols(X));
  CHECK(text.find("R^2") != std::string::npos);
  CHECK(fit_tsv(fit_ols(X)).find("(full)") != std::string::npos);
}
