#include "rel/chem/tasks.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include <fmt/format.h>

#include "rel/chem/formula.hpp"
#include "rel/chem/match.hpp"
#include "rel/chem/smiles.hpp"
#include "rel/core/error.hpp"
#include "rel/core/text.hpp"

namespace rel::chem {

C1Params c1_params_from_json(const Json& j) {
  C1Params p;
  p.n_molecules = j.value("n_molecules", p.n_molecules);
  if (j.contains("yes") && !j.at("yes").is_null()) p.yes = j.at("yes").get<bool>();
  p.min_isomers = j.value("min_isomers", p.min_isomers);
  p.max_isomers = j.value("max_isomers", p.max_isomers);
  return p;
}

C2Params c2_params_from_json(const Json& j) {
  C2Params p;
  p.n_molecules = j.value("n_molecules", p.n_molecules);
  p.sim_lo = j.value("sim_lo", p.sim_lo);
  p.sim_hi = j.value("sim_hi", p.sim_hi);
  p.min_mcs_atoms = j.value("min_mcs_atoms", p.min_mcs_atoms);
  p.max_tries = j.value("max_tries", p.max_tries);
  p.mcs_time_budget_s = j.value("mcs_time_budget_s", p.mcs_time_budget_s);
  return p;
}

C3Params c3_params_from_json(const Json& j) {
  C3Params p;
  p.n_molecules = j.value("n_molecules", p.n_molecules);
  p.min_isomers = j.value("min_isomers", p.min_isomers);
  p.max_isomers = j.value("max_isomers", p.max_isomers);
  return p;
}

C4Params c4_params_from_json(const Json& j) {
  C4Params p;
  p.n_molecules = j.value("n_molecules", p.n_molecules);
  if (j.contains("fg_kind")) p.fg_kind = parse_fg_kind(j.at("fg_kind").get<std::string>());
  if (j.contains("target") && !j.at("target").is_null()) p.target = j.at("target").get<int>();
  p.min_motif_atoms = j.value("min_motif_atoms", p.min_motif_atoms);
  p.max_radius = j.value("max_radius", p.max_radius);
  p.max_tries = j.value("max_tries", p.max_tries);
  return p;
}

namespace {

std::string numbered(const std::vector<std::string>& smiles) {
  std::string out;
  for (std::size_t i = 0; i < smiles.size(); ++i) {
    out += fmt::format("{}. {}\n", i + 1, smiles[i]);
  }
  return out;
}

}  // namespace

std::string render_c1_prompt(const std::vector<std::string>& smiles) {
  return "Is this list of molecules a set of *constitutional isomers*\n"
         "(same molecular formula, different connectivity)?\n"
         "\n"
         "SMILES:\n" +
         numbered(smiles) +
         "\n"
         "Return exactly one of:\n"
         "<Yes>\n"
         "or\n"
         "<No>\n"
         "No explanation.";
}

std::string render_c2_prompt(const std::vector<std::string>& smiles) {
  return "Given the following list of SMILES, what is the largest *connected* common "
         "chemical motif (maximum common substructure) present in every molecule?\n"
         "Rules:\n"
         "- The motif must be a single connected fragment.\n"
         "- Do NOT tautomerize molecules.\n"
         "- Ignore stereochemistry unless it is explicitly encoded and required.\n"
         "\n"
         "SMILES:\n" +
         numbered(smiles) +
         "\n"
         "Return your final answer as a single SMILES wrapped exactly like:\n"
         "<smiles>YOUR_SMILES_HERE</smiles>\n"
         "No explanation.";
}

std::string render_c3_prompt(const std::vector<std::string>& smiles) {
  return "Given the following list of constitutional isomers, complete the set by "
         "identifying the missing constitutional isomers.\n"
         "\n"
         "Given SMILES:\n" +
         numbered(smiles) +
         "\n"
         "Return the missing molecules as SMILES, one per line, each wrapped exactly like:\n"
         "<smiles>YOUR_SMILES_HERE</smiles>\n"
         "No explanation.";
}

namespace {

std::string render_c4(const std::vector<std::string>& smiles, FgKind kind, int target,
                      int min_atoms) {
  const int n = static_cast<int>(smiles.size());
  const std::string fg = fmt::format("`{}`", prompt_name(kind));
  std::string s;
  s += fmt::format(
      "Given the following {} molecules, identify one continuous motif from **each** "
      "molecule.\n\n",
      n);
  s += "**Task**\n";
  s += fmt::format(
      "1. From each of the {} molecules below, extract one continuous motif "
      "(substructure).\n",
      n);
  s += fmt::format("2. Ensure the total count of {} across all motifs equals {}.\n\n", fg,
                   target);
  s += "**Constraints**\n";
  s += "- Each motif must be a valid SMILES string (complete and parseable by RDKit).\n";
  s += "- Each motif must be a substructure that actually exists in its parent molecule.\n";
  s += fmt::format("- Each motif must contain at least {} heavy atoms (non-hydrogen).\n",
                   min_atoms);
  s += fmt::format("- The sum of {} across all selected motifs must equal {}.\n\n", fg,
                   target);
  s += "**Critical validation rules**\n";
  s += "- SMILES must be complete; do not truncate or abbreviate.\n";
  s += "- Rings must be closed: every ring opening digit (1-9) must have a matching "
       "closing digit.\n";
  s += "- Wrong: `CC12CCC(=O)C=C1` (ring 2 never closes) — invalid SMILES.\n";
  s += "- Right: `CC12CCC(=O)C=C1CC2` (both rings 1 and 2 close properly).\n";
  s += "- Each motif must be a continuous fragment that exists exactly as written in its "
       "parent molecule.\n";
  s += "- When extracting from complex fused rings, use simpler motifs if needed.\n";
  s += fmt::format("- Count {} carefully.\n", fg);
  s += fmt::format("- Verify that the total sum equals {} before submitting.\n\n", target);
  s += "**Molecules**\n```\n" + numbered(smiles) + "```\n\n";
  s += "**Step-by-step approach**\n";
  s += fmt::format("1. For each molecule, identify candidate motifs with at least {} heavy "
                   "atoms.\n",
                   min_atoms);
  s += fmt::format("2. Count {} in each candidate motif.\n", fg);
  s += fmt::format("3. Select one motif from each molecule such that the total sum equals "
                   "{}.\n",
                   target);
  s += fmt::format("4. Some motifs may contain 0 {}; this is allowed.\n", fg);
  s += "5. Extract the exact substructure from the parent molecule and copy it precisely.\n";
  s += "6. Ensure each SMILES is complete, with all rings properly closed (e.g., "
       "`c1ccccc1`).\n";
  s += fmt::format("7. Final check: each motif exists in its parent molecule and the total "
                   "sum equals {}.\n\n",
                   target);
  s += "**Functional group examples (for reference)**\n";
  s += "- Ketone: `C(=O)C` or `CC(=O)CC`\n";
  s += "- Carboxylic acid: `C(=O)O` or `CC(=O)O`\n";
  s += "- Ester: `C(=O)OC` or `CC(=O)OC`\n";
  s += "- Aldehyde: `C(=O)` at chain end\n";
  s += "- Primary amine: `CNH2` or `CCN`\n";
  s += "- Alcohol: `CO` (hydroxyl on an sp3 carbon)\n";
  s += "- Aromatic ring: `c1ccccc1` (benzene)\n\n";
  s += "**Output format** (indices are 0-indexed and must include all molecules)\n";
  s += "```\n<indices>0,1,2</indices>\n<motif_0>CCCCCC</motif_0>\n"
       "<motif_1>c1ccccc1</motif_1>\n<motif_2>CC(=O)O</motif_2>\n```\n\n";
  s += "**Format rules**\n";
  s += fmt::format("- List all molecule indices in the `<indices>` tag (0 through {}), "
                   "comma-separated.\n",
                   n - 1);
  s += "- For each index, provide a complete motif SMILES in the corresponding "
       "`<motif_N>` tag.\n";
  s += "- Do not use `<smiles>` tags; use `<motif_N>` where N is the molecule index.\n";
  s += "- SMILES must be complete (e.g., `c1ccccc1`, not `c1ccc`).\n\n";
  s += "**Critical reminder**\n";
  s += fmt::format("To obtain {} {}:\n", target, fg);
  s += fmt::format("- You must provide a motif for every molecule (all {} molecules).\n", n);
  s += fmt::format("- Some motifs may have 0 {}; balance is key.\n", fg);
  s += fmt::format("- Adjust motif selections so that the total equals {}.\n\n", target);
  s += "**Before submitting, verify**\n";
  s += fmt::format("- Provided a motif for all {} molecules (indices 0 through {}).\n", n,
                   n - 1);
  s += "- Each SMILES is complete and valid, with all rings closed.\n";
  s += "- Each motif exists in its parent molecule.\n";
  s += fmt::format("- Counted {} in each motif.\n", fg);
  s += fmt::format("- The sum of {} is exactly {}.\n\n", fg, target);
  s += "Provide only the formatted answer above. No explanation.";
  return s;
}

}  // namespace

std::string render_c4_prompt(const std::vector<std::string>& smiles, FgKind kind,
                             int target) {
  return render_c4(smiles, kind, target, 6);
}

namespace {

void finish(TaskInstance& inst, SeededRng& rng) {
  inst.domain = Domain::kChemistry;
  inst.seed = rng.seed();
  if (!rng.path().empty()) inst.gen_params["rng_path"] = join(rng.path(), "/");
  inst.rc = expected_rc(inst.task_code, inst.gen_params);
  inst.oc_params["prompt_chars"] = static_cast<double>(inst.prompt.size());
  inst.id = instance_id(inst.task_code, inst.gen_params, inst.seed);
}

double mean_heavy_atoms(const std::vector<std::string>& smiles) {
  if (smiles.empty()) return 0.0;
  double total = 0.0;
  for (const auto& s : smiles) total += parse_smiles(s).n_atoms();
  return total / static_cast<double>(smiles.size());
}

bool usable(const IsomerSet& s, std::size_t lo, std::size_t hi) {
  return !s.truncated && s.members.size() >= lo && s.members.size() <= hi;
}

// Pool entries in random order, prefiltered on the recorded counts.
std::vector<std::size_t> pool_order(const std::vector<PoolEntry>& pool, std::size_t lo,
                                    std::size_t hi, std::size_t at_least,
                                    SeededRng& rng) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    const auto n = static_cast<std::size_t>(pool[i].n_isomers);
    if (pool[i].n_isomers == 0 || (n >= lo && n <= hi && n >= at_least)) idx.push_back(i);
  }
  rng.shuffle(idx);
  return idx;
}

}  // namespace

TaskInstance gen_c1(const std::vector<PoolEntry>& pool, IsomerCache& cache,
                    const C1Params& p, SeededRng rng) {
  if (p.n_molecules < 2) throw ParameterError("C1 needs at least 2 molecules");
  if (pool.empty()) throw ParameterError("C1: empty formula pool");
  SeededRng answer_rng = rng.split("answer");
  const bool yes = p.yes ? *p.yes : answer_rng.bernoulli(0.5);
  const std::size_t need = yes ? p.n_molecules : p.n_molecules - 1;

  SeededRng pick = rng.split("formula");
  std::optional<std::size_t> main;
  std::shared_ptr<const IsomerSet> universe;
  for (std::size_t i : pool_order(pool, p.min_isomers, p.max_isomers, need, pick)) {
    auto s = cache.get(pool[i].formula);
    if (usable(*s, p.min_isomers, p.max_isomers) && s->members.size() >= need) {
      main = i;
      universe = s;
      break;
    }
  }
  if (!main) {
    throw ParameterError(fmt::format(
        "C1: no pool formula has {}..{} isomers and at least {}", p.min_isomers,
        p.max_isomers, need));
  }

  std::vector<std::string> mols;
  SeededRng draw = rng.split("molecules");
  for (std::size_t k : draw.sample_indices(universe->members.size(), need)) {
    mols.push_back(universe->members[k]);
  }

  Json outlier_formula = nullptr;
  int outlier_index = -1;
  if (!yes) {
    SeededRng other = rng.split("outlier");
    std::optional<std::string> odd;
    for (std::size_t i : pool_order(pool, p.min_isomers, p.max_isomers, 1, other)) {
      if (pool[i].formula == pool[*main].formula) continue;
      auto s = cache.get(pool[i].formula);
      if (!usable(*s, p.min_isomers, p.max_isomers)) continue;
      odd = s->members[other.uniform_index(s->members.size())];
      outlier_formula = to_string(pool[i].formula);
      break;
    }
    if (!odd) throw ParameterError("C1: no second formula for the outlier");
    outlier_index = static_cast<int>(other.uniform_index(mols.size() + 1));
    mols.insert(mols.begin() + outlier_index, *odd);
  }

  TaskInstance inst;
  inst.task_code = TaskCode::C1;
  Json gp;
  gp["formula"] = to_string(pool[*main].formula);
  gp["universe_size"] = universe->members.size();
  gp["n_molecules"] = p.n_molecules;
  gp["yes"] = yes;
  gp["outlier_formula"] = outlier_formula;
  gp["outlier_index"] = outlier_index;
  gp["molecules"] = mols;
  gp["dbe"] = dbe_of(pool[*main].formula);
  inst.gen_params = std::move(gp);
  inst.prompt = render_c1_prompt(mols);
  inst.answer = YesNoTaxa{yes, {}};
  inst.oc_params["n_molecules"] = p.n_molecules;
  inst.oc_params["heavy_atoms"] = mean_heavy_atoms(mols);
  finish(inst, rng);
  return inst;
}

TaskInstance gen_c2(const MoleculeBank& bank, const C2Params& p, SeededRng rng) {
  if (p.n_molecules < 2) throw ParameterError("C2 needs at least 2 molecules");
  const std::size_t n = bank.entries.size();
  if (n < static_cast<std::size_t>(p.n_molecules)) {
    throw ParameterError("C2: bank smaller than the requested molecule count");
  }
  for (int attempt = 0; attempt < p.max_tries; ++attempt) {
    SeededRng tr = rng.split(static_cast<std::uint64_t>(attempt));
    const std::size_t seed = tr.uniform_index(n);
    std::vector<std::size_t> near;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == seed) continue;
      double t = tanimoto(bank.entries[seed].fp, bank.entries[j].fp);
      if (t >= p.sim_lo && t <= p.sim_hi) near.push_back(j);
    }
    if (near.size() + 1 < static_cast<std::size_t>(p.n_molecules)) continue;
    std::vector<std::size_t> chosen{seed};
    for (std::size_t k : tr.sample_indices(near.size(), p.n_molecules - 1)) {
      chosen.push_back(near[k]);
    }
    std::vector<MolGraph> mols;
    for (std::size_t c : chosen) mols.push_back(bank.entries[c].mol);
    McsOptions mo;
    mo.min_atoms = p.min_mcs_atoms;
    mo.time_budget_s = p.mcs_time_budget_s;
    McsResult r = mcs_of_set(mols, mo);
    if (!r.mol || !r.exact) continue;

    tr.shuffle(chosen);
    std::vector<std::string> smiles;
    std::vector<std::string> names;
    for (std::size_t c : chosen) {
      smiles.push_back(bank.entries[c].smiles);
      names.push_back(bank.entries[c].name);
    }
    TaskInstance inst;
    inst.task_code = TaskCode::C2;
    Json gp;
    gp["n_molecules"] = p.n_molecules;
    gp["molecules"] = smiles;
    gp["names"] = names;
    gp["seed_molecule"] = bank.entries[seed].name;
    gp["sim_range"] = {p.sim_lo, p.sim_hi};
    gp["min_mcs_atoms"] = p.min_mcs_atoms;
    gp["mcs"] = r.smiles;
    gp["mcs_atoms"] = r.n_atoms;
    gp["mcs_bonds"] = r.n_bonds;
    gp["attempt"] = attempt;
    inst.gen_params = std::move(gp);
    inst.prompt = render_c2_prompt(smiles);
    inst.answer = Smiles{r.smiles};
    inst.oc_params["n_molecules"] = p.n_molecules;
    inst.oc_params["heavy_atoms"] = mean_heavy_atoms(smiles);
    inst.oc_params["mcs_atoms"] = r.n_atoms;
    finish(inst, rng);
    return inst;
  }
  throw ParameterError(fmt::format(
      "C2: no {}-molecule set with an MCS of at least {} atoms after {} tries",
      p.n_molecules, p.min_mcs_atoms, p.max_tries));
}

TaskInstance gen_c3(const std::vector<PoolEntry>& pool, IsomerCache& cache,
                    const C3Params& p, SeededRng rng) {
  if (p.n_molecules < 1) throw ParameterError("C3 needs at least 1 observed molecule");
  if (pool.empty()) throw ParameterError("C3: empty formula pool");
  const std::size_t need = static_cast<std::size_t>(p.n_molecules) + 1;
  SeededRng pick = rng.split("formula");
  for (std::size_t i : pool_order(pool, p.min_isomers, p.max_isomers, need, pick)) {
    auto s = cache.get(pool[i].formula);
    if (!usable(*s, p.min_isomers, p.max_isomers) || s->members.size() < need) continue;

    SeededRng draw = rng.split("observed");
    std::vector<std::size_t> obs_idx =
        draw.sample_indices(s->members.size(), p.n_molecules);
    std::vector<std::string> observed;
    std::set<std::size_t> taken(obs_idx.begin(), obs_idx.end());
    for (std::size_t k : obs_idx) observed.push_back(s->members[k]);
    std::set<std::string> missing;
    for (std::size_t k = 0; k < s->members.size(); ++k) {
      if (!taken.count(k)) missing.insert(s->members[k]);
    }

    TaskInstance inst;
    inst.task_code = TaskCode::C3;
    Json gp;
    gp["formula"] = to_string(pool[i].formula);
    gp["n_isomers"] = s->members.size();
    gp["n_observed"] = p.n_molecules;
    gp["n_missing"] = missing.size();
    gp["observed"] = observed;
    gp["dbe"] = dbe_of(pool[i].formula);
    inst.gen_params = std::move(gp);
    inst.prompt = render_c3_prompt(observed);
    inst.answer = SmilesSet{missing};
    inst.oc_params["n_molecules"] = p.n_molecules;
    inst.oc_params["n_missing"] = static_cast<double>(missing.size());
    inst.oc_params["heavy_atoms"] = pool[i].formula.heavy_atoms();
    inst.oc_params["dbe"] = dbe_of(pool[i].formula);
    finish(inst, rng);
    return inst;
  }
  throw ParameterError(fmt::format(
      "C3: no pool formula has {}..{} isomers and more than {}", p.min_isomers,
      p.max_isomers, p.n_molecules));
}

std::vector<Motif> candidate_motifs(const MolGraph& mol, FgKind kind, int min_atoms,
                                    int max_radius) {
  const int n = mol.n_atoms();
  // Aromatic systems: components of the aromatic-bond subgraph.
  std::vector<int> system(n, -1);
  std::vector<std::vector<int>> systems;
  for (int a = 0; a < n; ++a) {
    if (system[a] >= 0 || !mol.atom(a).aromatic) continue;
    const int id = static_cast<int>(systems.size());
    systems.emplace_back();
    std::deque<int> q{a};
    system[a] = id;
    while (!q.empty()) {
      int v = q.front();
      q.pop_front();
      systems[id].push_back(v);
      for (const Neighbor& nb : mol.neighbors(v)) {
        if (mol.bond(nb.bond).aromatic && system[nb.atom] < 0) {
          system[nb.atom] = id;
          q.push_back(nb.atom);
        }
      }
    }
  }

  std::set<std::vector<int>> balls;
  std::vector<int> all(n);
  std::iota(all.begin(), all.end(), 0);
  balls.insert(all);
  for (int a = 0; a < n; ++a) {
    std::vector<int> dist(n, -1);
    std::deque<int> q{a};
    dist[a] = 0;
    while (!q.empty()) {
      int v = q.front();
      q.pop_front();
      for (const Neighbor& nb : mol.neighbors(v)) {
        if (dist[nb.atom] < 0) {
          dist[nb.atom] = dist[v] + 1;
          q.push_back(nb.atom);
        }
      }
    }
    for (int r = 1; r <= max_radius; ++r) {
      std::vector<bool> in(n, false);
      for (int v = 0; v < n; ++v) {
        if (dist[v] >= 0 && dist[v] <= r) {
          in[v] = true;
          if (system[v] >= 0) {
            for (int w : systems[system[v]]) in[w] = true;
          }
        }
      }
      std::vector<int> ball;
      for (int v = 0; v < n; ++v) {
        if (in[v]) ball.push_back(v);
      }
      if (static_cast<int>(ball.size()) >= min_atoms) balls.insert(ball);
    }
  }

  std::map<std::string, Motif> found;
  for (const auto& ball : balls) {
    std::vector<bool> in(n, false);
    for (int v : ball) in[v] = true;
    std::vector<int> bonds;
    for (int b = 0; b < mol.n_bonds(); ++b) {
      if (in[mol.bond(b).a] && in[mol.bond(b).b]) bonds.push_back(b);
    }
    auto frag = bond_fragment(mol, bonds);
    if (!frag || frag->n_atoms() < min_atoms || !frag->is_connected()) continue;
    std::string smi = canonical_smiles(*frag);
    if (found.count(smi)) continue;
    MolGraph back = parse_smiles(smi);
    if (!is_subgraph(back, mol)) continue;
    found.emplace(smi, Motif{smi, back.n_atoms(), count_fg(back, kind)});
  }
  std::vector<Motif> out;
  for (auto& [smi, m] : found) out.push_back(std::move(m));
  return out;
}

std::set<int> feasible_totals(const std::vector<std::set<int>>& per_molecule) {
  std::set<int> reach{0};
  for (const auto& s : per_molecule) {
    std::set<int> next;
    for (int r : reach) {
      for (int c : s) next.insert(r + c);
    }
    reach.swap(next);
  }
  return reach;
}

TaskInstance gen_c4(const MoleculeBank& bank, const C4Params& p, SeededRng rng) {
  if (p.n_molecules < 1) throw ParameterError("C4 needs at least 1 molecule");
  if (p.target && *p.target < 0) throw ParameterError("C4: negative target");
  const std::size_t n = bank.entries.size();
  if (n < static_cast<std::size_t>(p.n_molecules)) {
    throw ParameterError("C4: bank smaller than the requested molecule count");
  }
  std::map<std::size_t, std::vector<Motif>> memo;
  for (int attempt = 0; attempt < p.max_tries; ++attempt) {
    SeededRng tr = rng.split(static_cast<std::uint64_t>(attempt));
    std::vector<std::size_t> chosen = tr.sample_indices(n, p.n_molecules);
    std::vector<const std::vector<Motif>*> cands;
    bool ok = true;
    for (std::size_t c : chosen) {
      auto it = memo.find(c);
      if (it == memo.end()) {
        it = memo.emplace(c, candidate_motifs(bank.entries[c].mol, p.fg_kind,
                                              p.min_motif_atoms, p.max_radius))
                 .first;
      }
      if (it->second.empty()) ok = false;
      cands.push_back(&it->second);
    }
    if (!ok) continue;

    std::vector<std::set<int>> counts;
    for (const auto* cs : cands) {
      std::set<int> s;
      for (const Motif& m : *cs) s.insert(m.count);
      counts.push_back(std::move(s));
    }
    // prefix[i]: totals reachable with the first i molecules.
    std::vector<std::set<int>> prefix{{0}};
    for (const auto& s : counts) {
      std::set<int> next;
      for (int r : prefix.back()) {
        for (int c : s) next.insert(r + c);
      }
      prefix.push_back(std::move(next));
    }
    const std::set<int>& feasible = prefix.back();
    int target = 0;
    if (p.target) {
      if (!feasible.count(*p.target)) continue;
      target = *p.target;
    } else {
      std::vector<int> f(feasible.begin(), feasible.end());
      target = f[tr.uniform_index(f.size())];
    }

    // Walk back from the last molecule picking a count that keeps the rest
    // reachable, then a random motif with that count.
    std::map<int, std::string> witness;
    int left = target;
    for (int i = p.n_molecules - 1; i >= 0; --i) {
      std::vector<int> opts;
      for (int c : counts[i]) {
        if (prefix[i].count(left - c)) opts.push_back(c);
      }
      int c = opts[tr.uniform_index(opts.size())];
      std::vector<const Motif*> with;
      for (const Motif& m : *cands[i]) {
        if (m.count == c) with.push_back(&m);
      }
      witness[i] = with[tr.uniform_index(with.size())]->smiles;
      left -= c;
    }

    std::vector<std::string> smiles;
    Json achievable = Json::array();
    for (std::size_t i = 0; i < chosen.size(); ++i) {
      smiles.push_back(bank.entries[chosen[i]].smiles);
      achievable.push_back(std::vector<int>(counts[i].begin(), counts[i].end()));
    }
    TaskInstance inst;
    inst.task_code = TaskCode::C4;
    Json gp;
    gp["n_molecules"] = p.n_molecules;
    gp["molecules"] = smiles;
    gp["fg_kind"] = std::string(to_string(p.fg_kind));
    gp["target"] = target;
    gp["min_motif_atoms"] = p.min_motif_atoms;
    gp["achievable"] = std::move(achievable);
    gp["attempt"] = attempt;
    inst.gen_params = std::move(gp);
    inst.prompt = render_c4(smiles, p.fg_kind, target, p.min_motif_atoms);
    inst.answer = MotifMap{witness, target, std::string(to_string(p.fg_kind))};
    inst.oc_params["n_molecules"] = p.n_molecules;
    inst.oc_params["heavy_atoms"] = mean_heavy_atoms(smiles);
    inst.oc_params["target"] = target;
    finish(inst, rng);
    return inst;
  }
  throw ParameterError(fmt::format("C4: no feasible {}-molecule instance after {} tries",
                                   p.n_molecules, p.max_tries));
}

}  // namespace rel::chem
