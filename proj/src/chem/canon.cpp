#include <algorithm>
#include <array>
#include <numeric>

#include "rel/chem/smiles.hpp"

namespace rel::chem {
namespace {

// Individualization-refinement search for the labelling with the smallest
// certificate. Automorphisms found at equal leaves prune sibling branches.
class Canonizer {
 public:
  Canonizer(const MolGraph& mol, CanonMode mode) : n_(mol.n_atoms()) {
    adj_.resize(n_);
    for (int i = 0; i < mol.n_bonds(); ++i) {
      const Bond& b = mol.bond(i);
      int label = mode == CanonMode::kResonance ? bond_class(b) : b.order;
      adj_[b.a].push_back({b.b, label});
      adj_[b.b].push_back({b.a, label});
      edges_.push_back({b.a, b.b, label});
    }
    inv_.resize(n_);
    for (int i = 0; i < n_; ++i) {
      const Atom& a = mol.atom(i);
      bool arom = mode == CanonMode::kResonance && a.aromatic;
      // Degree first so that terminal atoms start the written string.
      inv_[i] = {static_cast<int>(adj_[i].size()), a.z, a.charge,
                 a.hydrogens, arom ? 1 : 0};
    }
  }

  std::vector<int> run() {
    if (n_ == 0) return {};
    std::vector<int> order(n_);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return inv_[a] < inv_[b]; });
    std::vector<int> r(n_);
    for (int k = 0; k < n_; ++k) {
      int v = order[k];
      r[v] = (k > 0 && inv_[v] == inv_[order[k - 1]]) ? r[order[k - 1]] : k;
    }
    std::vector<int> prefix;
    search(r, prefix);
    return best_r_;
  }

 private:
  struct Nb {
    int atom, label;
  };
  struct Edge {
    int a, b, label;
  };

  void refine(std::vector<int>& r) const {
    int cells = count_cells(r);
    std::vector<std::vector<int>> sig(n_);
    std::vector<int> order(n_);
    for (;;) {
      for (int i = 0; i < n_; ++i) {
        auto& s = sig[i];
        s.clear();
        s.push_back(r[i]);
        std::vector<int> nb;
        nb.reserve(adj_[i].size());
        for (const auto& e : adj_[i]) nb.push_back(r[e.atom] * 8 + e.label);
        std::sort(nb.begin(), nb.end());
        s.insert(s.end(), nb.begin(), nb.end());
      }
      std::iota(order.begin(), order.end(), 0);
      std::sort(order.begin(), order.end(),
                [&](int a, int b) { return sig[a] < sig[b]; });
      std::vector<int> nr(n_);
      for (int k = 0; k < n_; ++k) {
        int v = order[k];
        nr[v] = (k > 0 && sig[v] == sig[order[k - 1]]) ? nr[order[k - 1]] : k;
      }
      r.swap(nr);
      int c = count_cells(r);
      if (c == cells) return;
      cells = c;
    }
  }

  static int count_cells(const std::vector<int>& r) {
    std::vector<char> seen(r.size(), 0);
    int c = 0;
    for (int x : r)
      if (!seen[x]) seen[x] = 1, ++c;
    return c;
  }

  std::vector<int> certificate(const std::vector<int>& r) const {
    std::vector<int> at(n_);
    for (int i = 0; i < n_; ++i) at[r[i]] = i;
    std::vector<int> cert;
    cert.reserve(n_ * 5 + edges_.size() * 3);
    for (int p = 0; p < n_; ++p)
      cert.insert(cert.end(), inv_[at[p]].begin(), inv_[at[p]].end());
    std::vector<std::array<int, 3>> es;
    es.reserve(edges_.size());
    for (const auto& e : edges_) {
      int x = r[e.a], y = r[e.b];
      es.push_back({std::min(x, y), std::max(x, y), e.label});
    }
    std::sort(es.begin(), es.end());
    for (const auto& e : es) cert.insert(cert.end(), e.begin(), e.end());
    return cert;
  }

  void leaf(const std::vector<int>& r) {
    auto cert = certificate(r);
    if (best_r_.empty() || cert < best_cert_) {
      best_cert_ = std::move(cert);
      best_r_ = r;
    } else if (cert == best_cert_) {
      std::vector<int> inv_best(n_);
      for (int i = 0; i < n_; ++i) inv_best[best_r_[i]] = i;
      std::vector<int> gamma(n_);
      for (int a = 0; a < n_; ++a) gamma[a] = inv_best[r[a]];
      autos_.push_back(std::move(gamma));
    }
  }

  static int find(std::vector<int>& uf, int x) {
    while (uf[x] != x) x = uf[x] = uf[uf[x]];
    return x;
  }

  void search(std::vector<int> r, std::vector<int>& prefix) {
    refine(r);
    std::vector<int> size(n_, 0);
    for (int x : r) ++size[x];
    int cell = -1;
    for (int c = 0; c < n_; ++c)
      if (size[c] > 1) {
        cell = c;
        break;
      }
    if (cell < 0) {
      leaf(r);
      return;
    }
    std::vector<int> members;
    for (int i = 0; i < n_; ++i)
      if (r[i] == cell) members.push_back(i);
    std::vector<int> explored;
    for (int v : members) {
      if (!explored.empty() && same_orbit(v, explored, prefix)) continue;
      std::vector<int> r2 = r;
      for (int u : members) r2[u] = cell + 1;
      r2[v] = cell;
      prefix.push_back(v);
      search(std::move(r2), prefix);
      prefix.pop_back();
      explored.push_back(v);
    }
  }

  bool same_orbit(int v, const std::vector<int>& explored,
                  const std::vector<int>& prefix) const {
    if (autos_.empty()) return false;
    std::vector<int> uf(n_);
    std::iota(uf.begin(), uf.end(), 0);
    bool any = false;
    for (const auto& g : autos_) {
      bool fixes = true;
      for (int p : prefix)
        if (g[p] != p) {
          fixes = false;
          break;
        }
      if (!fixes) continue;
      any = true;
      for (int a = 0; a < n_; ++a) {
        int x = find(uf, a), y = find(uf, g[a]);
        if (x != y) uf[x] = y;
      }
    }
    if (!any) return false;
    int rv = find(uf, v);
    for (int u : explored)
      if (find(uf, u) == rv) return true;
    return false;
  }

  int n_;
  std::vector<std::vector<Nb>> adj_;
  std::vector<Edge> edges_;
  std::vector<std::array<int, 5>> inv_;
  std::vector<int> best_r_, best_cert_;
  std::vector<std::vector<int>> autos_;
};

}  // namespace

std::vector<int> canonical_ranks(const MolGraph& mol, CanonMode mode) {
  return Canonizer(mol, mode).run();
}

std::string canonical_smiles(const MolGraph& mol, CanonMode mode) {
  return write_smiles(mol, canonical_ranks(mol, mode),
                      mode == CanonMode::kResonance);
}

std::string canonical_smiles(std::string_view smiles) {
  return canonical_smiles(parse_smiles(smiles));
}

std::optional<std::string> try_canonical(std::string_view smiles) noexcept {
  try {
    return canonical_smiles(smiles);
  } catch (...) {
    return std::nullopt;
  }
}

}  // namespace rel::chem
