#include "rel/chem/bank.hpp"

#include <set>
#include <sstream>

#include "rel/chem/element.hpp"
#include "rel/chem/smiles.hpp"
#include "rel/core/error.hpp"
#include "rel/core/text.hpp"

namespace rel::chem {

MoleculeBank parse_bank(std::string_view text, int min_heavy, int max_heavy) {
  MoleculeBank bank;
  std::set<std::string> seen;
  for (const std::string& raw : split(text, '\n')) {
    std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    std::size_t cut = line.find_first_of(" \t");
    std::string smi(line.substr(0, cut));
    std::string name;
    if (cut != std::string_view::npos) name = std::string(trim(line.substr(cut)));
    auto mol = try_parse_smiles(smi);
    if (!mol || !mol->is_connected()) {
      ++bank.skipped_unparseable;
      continue;
    }
    int n = mol->n_atoms();
    if (n < min_heavy || n > max_heavy) {
      ++bank.skipped_size;
      continue;
    }
    std::string canon = canonical_smiles(*mol);
    if (!seen.insert(canon).second) {
      ++bank.skipped_duplicate;
      continue;
    }
    BankEntry e;
    e.name = name.empty() ? "mol" + std::to_string(bank.entries.size()) : name;
    e.smiles = canon;
    e.fp = path_fingerprint(*mol);
    e.mol = std::move(*mol);
    bank.entries.push_back(std::move(e));
  }
  return bank;
}

MoleculeBank load_bank(const std::string& path, int min_heavy, int max_heavy) {
  return parse_bank(read_file(path), min_heavy, max_heavy);
}

std::vector<PoolEntry> parse_formula_pool(std::string_view text) {
  std::vector<PoolEntry> pool;
  for (const std::string& raw : split(text, '\n')) {
    std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    std::istringstream in{std::string(line)};
    std::string f;
    in >> f;
    PoolEntry e;
    e.formula = parse_formula(f);
    std::string count;
    if (in >> count) {
      auto v = parse_int(count);
      if (!v || *v < 0) throw ParseError("formula pool: bad count '" + count + "'");
      e.n_isomers = static_cast<int>(*v);
    }
    pool.push_back(std::move(e));
  }
  return pool;
}

std::vector<PoolEntry> load_formula_pool(const std::string& path) {
  return parse_formula_pool(read_file(path));
}

std::string format_formula_pool(const std::vector<PoolEntry>& pool) {
  std::string out;
  for (const auto& e : pool) {
    out += to_string(e.formula);
    out += '\t';
    out += std::to_string(e.n_isomers);
    out += '\n';
  }
  return out;
}

namespace {

void hetero_combos(const std::vector<int>& elems, std::size_t at, int left,
                   std::map<int, int>& cur, std::vector<std::map<int, int>>& out) {
  if (at == elems.size()) {
    out.push_back(cur);
    return;
  }
  for (int c = 0; c <= left; ++c) {
    if (c) cur[elems[at]] = c;
    else cur.erase(elems[at]);
    hetero_combos(elems, at + 1, left - c, cur, out);
  }
  cur.erase(elems[at]);
}

}  // namespace

std::vector<PoolEntry> build_formula_pool(const PoolSpec& spec,
                                          const std::atomic<bool>* cancel) {
  std::vector<std::map<int, int>> combos;
  std::map<int, int> cur;
  hetero_combos(spec.hetero, 0, spec.max_hetero, cur, combos);

  std::vector<PoolEntry> pool;
  for (int c = spec.min_carbons; c <= spec.max_carbons; ++c) {
    for (const auto& het : combos) {
      int heavy = c;
      int valence = 4 * c;
      for (auto [z, n] : het) {
        heavy += n;
        valence += enumeration_valence(z) * n;
      }
      if (heavy > spec.max_heavy) continue;
      // H ranges from the fully unsaturated tree bound up to saturation.
      int max_h = valence - 2 * (heavy - 1);
      for (int h = max_h; h >= 0; h -= 2) {
        if (cancel && cancel->load()) return pool;
        Formula f;
        f.counts[6] = c;
        if (h) f.counts[1] = h;
        for (auto [z, n] : het) f.counts[z] = n;
        EnumerateOptions opts;
        opts.cap = spec.max_isomers;
        opts.max_states = spec.max_states;
        opts.cancel = cancel;
        IsomerSet s = enumerate_isomers(f, opts);
        if (s.truncated) continue;
        if (s.members.size() < spec.min_isomers) continue;
        pool.push_back({f, static_cast<int>(s.members.size())});
      }
    }
  }
  return pool;
}

std::shared_ptr<const IsomerSet> IsomerCache::get(const Formula& f) {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = sets_.find(f);
    if (it != sets_.end()) return it->second;
  }
  auto s = std::make_shared<const IsomerSet>(enumerate_isomers(f, cap_));
  std::lock_guard<std::mutex> lock(mu_);
  return sets_.emplace(f, s).first->second;
}

}  // namespace rel::chem
