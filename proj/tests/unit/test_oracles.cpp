#include <set>

#include "chem_oracles.hpp"
#include "doctest.h"
#include "exact_ols.hpp"
#include "rel/chem/enumerate.hpp"
#include "rel/chem/formula.hpp"
#include "rel/analysis/ols.hpp"
#include "rel/chem/match.hpp"
#include "rel/chem/smiles.hpp"
#include "rel/core/rng.hpp"

using namespace rel;
using namespace rel::chem;

namespace {

std::vector<int> random_perm(int n, SeededRng& rng) {
  std::vector<int> p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  rng.shuffle(p);
  return p;
}

std::vector<MolGraph> small_molecules() {
  std::vector<MolGraph> out;
  for (const char* s : {"Cc1ccccc1", "CCc1ccccc1", "COc1ccccc1", "Oc1ccccc1", "OC(=O)c1ccccc1",
                        "OC1CCCCC1", "c1ccncc1", "Cc1ccncc1", "CC(=O)Nc1ccccc1", "Clc1ccc(Cl)cc1",
                        "CCOC(=O)C", "CCCCO", "CC(C)CO", "C1CCOC1", "c1ccoc1", "c1ccsc1",
                        "CC(=O)C", "CCN(CC)CC", "OCC(O)CO", "c1ccc2ccccc2c1", "Cc1ccc(C)cc1",
                        "NC(=O)c1ccccc1", "C=CC(=O)OC", "CC#N", "ClC1C(Cl)C1Cl"})
    out.push_back(parse_smiles(s));
  return out;
}

}  // namespace

TEST_CASE("canonical equality matches isomorphism") {
  SeededRng rng(21);
  for (const char* text : {"C5H5N", "C4H8O", "C3H3Cl3", "C6H6", "C4H6O2"}) {
    auto iso = enumerate_isomers(parse_formula(text), 100000);
    std::vector<MolGraph> mols;
    for (const auto& s : iso.members) mols.push_back(parse_smiles(s));
    for (std::size_t i = 0; i < mols.size(); ++i) {
      auto p = mols[i].permuted(random_perm(mols[i].n_atoms(), rng));
      REQUIRE(oracle::isomorphic(mols[i], p));
      REQUIRE(canonical_smiles(p) == iso.members[i]);
      // A few random partners from the same formula are never isomorphic.
      for (int r = 0; r < 3; ++r) {
        std::size_t j = rng.uniform_index(mols.size());
        bool same_canon = canonical_smiles(mols[j]) == canonical_smiles(p);
        REQUIRE(same_canon == oracle::isomorphic(mols[j], p));
      }
    }
  }
}

TEST_CASE("library matcher agrees with the backtracking oracle") {
  auto mols = small_molecules();
  SeededRng rng(22);
  int yes = 0;
  for (std::size_t i = 0; i < mols.size(); ++i) {
    for (std::size_t j = 0; j < mols.size(); ++j) {
      auto t = mols[j].permuted(random_perm(mols[j].n_atoms(), rng));
      bool lib = is_subgraph(mols[i], t);
      REQUIRE(lib == oracle::monomorphic(mols[i], t));
      yes += lib;
    }
  }
  CHECK(yes > static_cast<int>(mols.size()));
}

TEST_CASE("set MCS matches the exhaustive oracle") {
  auto mols = small_molecules();
  SeededRng rng(23);
  auto writable = [](const MolGraph& m, const std::vector<int>& bonds) {
    return bond_fragment(m, bonds).has_value();
  };
  for (int rep = 0; rep < 60; ++rep) {
    std::vector<MolGraph> set;
    std::size_t k = 2 + rng.uniform_index(3);
    for (auto idx : rng.sample_indices(mols.size(), k)) set.push_back(mols[idx]);
    McsOptions opts;
    opts.min_atoms = 1;
    auto got = mcs_of_set(set, opts);
    auto want = oracle::exhaustive_mcs(set, writable);
    INFO("rep ", rep, " got ", got.smiles);
    REQUIRE(got.exact);
    CHECK(got.n_bonds == want.n_bonds);
    CHECK(got.n_atoms == want.n_atoms);
    if (got.mol) {
      for (const auto& m : set) CHECK(is_subgraph(*got.mol, m));
      CHECK(got.mol->is_connected());
    }
  }
}

TEST_CASE("exact least squares agrees with the floating fit") {
  SeededRng rng(24);
  analysis::DesignMatrix X;
  X.columns = {"a", "b", "c"};
  X.groups = {"a", "b", "c"};
  X.group_of = {0, 1, 2};
  std::vector<std::vector<oracle::Rational>> xr;
  std::vector<oracle::Rational> yr;
  for (int i = 0; i < 40; ++i) {
    std::vector<double> row;
    std::vector<oracle::Rational> rr;
    for (int j = 0; j < 3; ++j) {
      auto v = rng.uniform_int(-20, 20);
      row.push_back(static_cast<double>(v));
      rr.push_back(v);
    }
    auto y = 3 * row[0] - 2 * row[1] + row[2] / 2 + rng.uniform_int(-5, 5);
    X.x.push_back(row);
    X.y.push_back(y);
    xr.push_back(rr);
    yr.push_back(oracle::Rational(static_cast<long long>(y * 2), 2));
  }
  auto fit = analysis::fit_columns(X, {0, 1, 2});
  auto exact = oracle::exact_ols(xr, yr);
  REQUIRE(fit.beta.size() == 4);
  for (int j = 0; j < 4; ++j) CHECK(std::abs(fit.beta[j] - exact[j].convert_to<double>()) < 1e-8);
}

namespace {

std::set<std::string> oracle_set(const Formula& f) {
  std::map<int, int> heavy;
  for (auto [z, c] : f.counts)
    if (z != 1 && c) heavy[z] = c;
  auto o = oracle::brute_force_isomers(heavy, f.count(1));
  std::set<std::string> out;
  for (const auto& m : o.representatives) out.insert(canonical_smiles(m));
  CHECK(out.size() == o.representatives.size());
  return out;
}

}  // namespace

TEST_CASE("isomer oracle agrees on small formulas") {
  for (const char* text : {"CH4", "C2H6O", "C4H10", "C3H3Cl3", "C2H2", "C3H4", "C4H4", "C2H3N",
                           "CH2O2", "C3H6O", "C6H6", "C5H5N", "C4H4O", "C4H4S"}) {
    auto f = parse_formula(text);
    auto want = oracle_set(f);
    auto got = enumerate_isomers(f, 100000);
    INFO(text);
    CHECK_FALSE(got.truncated);
    CHECK(std::set<std::string>(got.members.begin(), got.members.end()) == want);
  }
}

