#include <algorithm>
#include <chrono>
#include <map>

#include "rel/chem/match.hpp"
#include "rel/chem/smiles.hpp"
#include "rel/core/error.hpp"

namespace rel::chem {
namespace {

int bond_type(const MolGraph& m, const Bond& b) {
  auto key = [&](int a) {
    const Atom& at = m.atom(a);
    return (at.z * 2 + (at.aromatic ? 1 : 0)) * 16 + (at.charge + 8);
  };
  int x = key(b.a), y = key(b.b);
  if (x > y) std::swap(x, y);
  return (x * 4096 + y) * 8 + bond_class(b);
}

bool bonds_compatible(const Bond& p, const Bond& t) {
  return p.aromatic == t.aromatic && (p.aromatic || p.order == t.order);
}

bool atoms_equal(const Atom& p, const Atom& t) {
  return p.z == t.z && p.aromatic == t.aromatic && p.charge == t.charge;
}

class McsSearch {
 public:
  McsSearch(const std::vector<MolGraph>& mols, const McsOptions& opts)
      : mols_(mols), opts_(opts) {
    q_ = 0;
    for (std::size_t i = 1; i < mols.size(); ++i) {
      const auto& a = mols[i];
      const auto& b = mols[q_];
      if (a.n_bonds() < b.n_bonds() ||
          (a.n_bonds() == b.n_bonds() && a.n_atoms() < b.n_atoms()))
        q_ = static_cast<int>(i);
    }
    for (std::size_t i = 0; i < mols.size(); ++i)
      if (static_cast<int>(i) != q_) targets_.push_back(static_cast<int>(i));
    deadline_ = std::chrono::steady_clock::now() +
                std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                    std::chrono::duration<double>(opts.time_budget_s));
  }

  McsResult run() {
    const MolGraph& q = mols_[q_];
    int m = q.n_bonds();
    type_.resize(m);
    std::map<int, int> limit;
    for (int i = 0; i < m; ++i) {
      type_[i] = bond_type(q, q.bond(i));
      limit[type_[i]] = 1 << 20;
    }
    for (int t : targets_) {
      std::map<int, int> cnt;
      for (const Bond& b : mols_[t].bonds()) ++cnt[bond_type(mols_[t], b)];
      for (auto& [k, v] : limit) v = std::min(v, cnt.count(k) ? cnt[k] : 0);
    }
    type_limit_ = limit;
    allowed_.assign(m, 0);
    for (int i = 0; i < m; ++i) allowed_[i] = limit[type_[i]] > 0;

    in_.assign(m, 0);
    excluded_.assign(m, 0);
    touch_.assign(q.n_atoms(), 0);
    emb_.assign(targets_.size(), std::vector<int>(q.n_atoms(), -1));
    used_.resize(targets_.size());
    for (std::size_t k = 0; k < targets_.size(); ++k)
      used_[k].assign(mols_[targets_[k]].n_atoms(), 0);

    for (int r = 0; r < m && !stop_; ++r) {
      if (allowed_[r]) {
        std::size_t mark = log_.size();
        if (add_bond(r)) {
          grow();
          remove_bond(r);
        }
        rollback(mark);
      }
      excluded_[r] = 1;
    }

    McsResult res;
    res.exact = !stop_;
    if (!best_.empty()) {
      auto frag = bond_fragment(q, best_);
      res.n_bonds = static_cast<int>(best_.size());
      res.n_atoms = frag->n_atoms();
      res.smiles = canonical_smiles(*frag);
      res.mol = std::move(*frag);
    }
    return res;
  }

 private:
  // Embedding changes since a mark: a single new atom, or a whole map
  // replaced by a fresh search.
  struct Undo {
    int k;
    int w = -1;
    int tv = -1;
    std::vector<int> emb;
    std::vector<char> used;
  };

  void rollback(std::size_t mark) {
    while (log_.size() > mark) {
      Undo& u = log_.back();
      if (u.w >= 0) {
        emb_[u.k][u.w] = -1;
        used_[u.k][u.tv] = 0;
      } else {
        emb_[u.k].swap(u.emb);
        used_[u.k].swap(u.used);
      }
      log_.pop_back();
    }
  }

  bool out_of_time() {
    if (stop_) return true;
    if ((++nodes_ & 255) == 0) {
      if (std::chrono::steady_clock::now() > deadline_ ||
          (opts_.cancel && opts_.cancel->load(std::memory_order_relaxed)))
        stop_ = true;
    }
    return stop_;
  }

  int atoms_in_s() const {
    int n = 0;
    for (char c : touch_) n += c > 0;
    return n;
  }

  // Extends every target embedding by bond e of the query; falls back to a
  // fresh search when the greedy extension fails. Returns false if S+e does
  // not embed in some target. The caller rolls the embeddings back.
  bool add_bond(int e) {
    const MolGraph& q = mols_[q_];
    const Bond& b = q.bond(e);
    in_[e] = 1;
    s_.push_back(e);
    ++touch_[b.a];
    ++touch_[b.b];
    for (std::size_t k = 0; k < targets_.size(); ++k) {
      if (!extend(k, e) && !full_embed(k)) {
        remove_bond(e);
        return false;
      }
    }
    return true;
  }

  void remove_bond(int e) {
    const Bond& b = mols_[q_].bond(e);
    in_[e] = 0;
    s_.pop_back();
    --touch_[b.a];
    --touch_[b.b];
  }

  bool extend(std::size_t k, int e) {
    const MolGraph& q = mols_[q_];
    const MolGraph& t = mols_[targets_[k]];
    const Bond& b = q.bond(e);
    auto& emb = emb_[k];
    auto& used = used_[k];
    int u = b.a, w = b.b;
    if (emb[u] < 0) std::swap(u, w);
    if (emb[u] < 0) return false;  // root bond: needs a full search
    if (emb[w] >= 0) {
      int tb = t.bond_between(emb[u], emb[w]);
      return tb >= 0 && bonds_compatible(b, t.bond(tb));
    }
    for (const auto& nb : t.neighbors(emb[u])) {
      if (used[nb.atom] || !atoms_equal(q.atom(w), t.atom(nb.atom)) ||
          !bonds_compatible(b, t.bond(nb.bond)))
        continue;
      emb[w] = nb.atom;
      used[nb.atom] = 1;
      log_.push_back({static_cast<int>(k), w, nb.atom, {}, {}});
      return true;
    }
    return false;
  }

  bool full_embed(std::size_t k) {
    const MolGraph& q = mols_[q_];
    MolGraph pat;
    std::vector<int> qmap(q.n_atoms(), -1), back;
    for (int e : s_) {
      const Bond& b = q.bond(e);
      for (int a : {b.a, b.b})
        if (qmap[a] < 0) {
          qmap[a] = pat.add_atom(q.atom(a));
          back.push_back(a);
        }
      pat.add_bond(qmap[b.a], qmap[b.b], b.order, b.aromatic);
    }
    auto found = find_embedding(pat, mols_[targets_[k]], true);
    if (!found) return false;
    Undo u{static_cast<int>(k), -1, -1, emb_[k], used_[k]};
    log_.push_back(std::move(u));
    auto& emb = emb_[k];
    auto& used = used_[k];
    std::fill(emb.begin(), emb.end(), -1);
    std::fill(used.begin(), used.end(), 0);
    for (std::size_t i = 0; i < back.size(); ++i) {
      emb[back[i]] = (*found)[i];
      used[(*found)[i]] = 1;
    }
    return true;
  }

  bool better(int bonds, int atoms) const {
    return bonds > best_bonds_ || (bonds == best_bonds_ && atoms > best_atoms_);
  }

  void consider() {
    int bonds = static_cast<int>(s_.size());
    int atoms = atoms_in_s();
    if (atoms < opts_.min_atoms || !better(bonds, atoms)) return;
    if (!bond_fragment(mols_[q_], s_)) return;
    best_ = s_;
    best_bonds_ = bonds;
    best_atoms_ = atoms;
  }

  bool pruned() {
    const MolGraph& q = mols_[q_];
    std::vector<char> seen_atom(q.n_atoms(), 0), seen_bond(q.n_bonds(), 0);
    std::vector<int> stack;
    for (int a = 0; a < q.n_atoms(); ++a)
      if (touch_[a]) {
        seen_atom[a] = 1;
        stack.push_back(a);
      }
    int atoms = static_cast<int>(stack.size());
    std::map<int, int> by_type;
    for (int e : s_) ++by_type[type_[e]];
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (const auto& nb : q.neighbors(v)) {
        int e = nb.bond;
        if (in_[e] || excluded_[e] || !allowed_[e] || seen_bond[e]) continue;
        seen_bond[e] = 1;
        ++by_type[type_[e]];
        if (!seen_atom[nb.atom]) {
          seen_atom[nb.atom] = 1;
          ++atoms;
          stack.push_back(nb.atom);
        }
      }
    }
    int ub = 0;
    for (auto [k, c] : by_type) ub += std::min(c, type_limit_.at(k));
    if (atoms < opts_.min_atoms) return true;
    if (ub < best_bonds_) return true;
    if (ub == best_bonds_ && atoms <= best_atoms_) return true;
    return false;
  }

  int pick_frontier() const {
    const MolGraph& q = mols_[q_];
    int open = -1;
    for (int e = 0; e < q.n_bonds(); ++e) {
      if (in_[e] || excluded_[e] || !allowed_[e]) continue;
      const Bond& b = q.bond(e);
      bool ta = touch_[b.a] > 0, tb = touch_[b.b] > 0;
      if (ta && tb) return e;
      if ((ta || tb) && open < 0) open = e;
    }
    return open;
  }

  void grow() {
    if (out_of_time()) return;
    consider();
    int e = pick_frontier();
    if (e < 0 || pruned()) return;
    {
      std::size_t mark = log_.size();
      if (add_bond(e)) {
        grow();
        remove_bond(e);
      }
      rollback(mark);
    }
    if (stop_) return;
    excluded_[e] = 1;
    grow();
    excluded_[e] = 0;
  }

  const std::vector<MolGraph>& mols_;
  McsOptions opts_;
  int q_;
  std::vector<int> targets_;
  std::vector<int> type_;
  std::map<int, int> type_limit_;
  std::vector<char> allowed_, in_, excluded_;
  std::vector<int> touch_;
  std::vector<int> s_;
  std::vector<std::vector<int>> emb_;
  std::vector<std::vector<char>> used_;
  std::vector<Undo> log_;
  std::vector<int> best_;
  int best_bonds_ = 0;
  int best_atoms_ = 0;
  long nodes_ = 0;
  bool stop_ = false;
  std::chrono::steady_clock::time_point deadline_;
};

}  // namespace

McsResult mcs_of_set(const std::vector<MolGraph>& mols, const McsOptions& opts) {
  if (mols.size() < 2) throw ParameterError("mcs_of_set: needs at least 2 molecules");
  return McsSearch(mols, opts).run();
}

}  // namespace rel::chem
