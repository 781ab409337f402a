#include <regex>

#include "rel/chem/match.hpp"
#include "rel/chem/smiles.hpp"
#include "rel/chem/tasks.hpp"
#include "rel/core/error.hpp"
#include "rel/core/text.hpp"

namespace rel::chem {

std::vector<std::string> extract_tagged(std::string_view text, std::string_view tag) {
  const std::string open = "<" + std::string(tag) + ">";
  const std::string close = "</" + std::string(tag) + ">";
  std::vector<std::string> out;
  std::size_t pos = 0;
  for (;;) {
    std::size_t a = text.find(open, pos);
    if (a == std::string_view::npos) break;
    a += open.size();
    std::size_t b = text.find(close, a);
    if (b == std::string_view::npos) break;
    out.emplace_back(trim(text.substr(a, b - a)));
    pos = b + close.size();
  }
  return out;
}

std::map<int, std::string> extract_motifs(std::string_view text) {
  static const std::regex re(R"(<motif_(\d+)>([\s\S]*?)</motif_\1>)");
  std::map<int, std::string> out;
  std::string s(text);
  for (auto it = std::sregex_iterator(s.begin(), s.end(), re); it != std::sregex_iterator();
       ++it) {
    auto idx = parse_int((*it)[1].str());
    if (!idx || *idx > 100000) continue;
    // The first motif given for an index wins.
    out.emplace(static_cast<int>(*idx), std::string(trim((*it)[2].str())));
  }
  return out;
}

C1Score score_c1(const TaskInstance& inst, std::string_view text) {
  const auto* truth = std::get_if<YesNoTaxa>(&inst.answer);
  if (!truth) throw IntegrityError(inst.id + ": C1 answer must be YesNoTaxa");
  const bool has_yes = text.find("<Yes>") != std::string_view::npos;
  const bool has_no = text.find("<No>") != std::string_view::npos;
  C1Score s;
  if (has_yes != has_no) s.parsed = has_yes;
  s.correct = s.parsed && *s.parsed == truth->yes;
  return s;
}

C2Score score_c2(const TaskInstance& inst, std::string_view text) {
  const auto* truth = std::get_if<Smiles>(&inst.answer);
  if (!truth) throw IntegrityError(inst.id + ": C2 answer must be Smiles");
  C2Score s;
  auto tags = extract_tagged(text, "smiles");
  if (tags.empty()) return s;
  s.parsed = tags.back();
  auto pred = try_parse_smiles(*s.parsed);
  if (!pred) return s;
  MolGraph t = parse_smiles(truth->smiles);
  s.substructure = substructure_score(*pred, t);
  s.exact = canonical_smiles(*pred) == canonical_smiles(t);
  return s;
}

C3Score score_c3(const TaskInstance& inst, std::string_view text) {
  const auto* truth = std::get_if<SmilesSet>(&inst.answer);
  if (!truth) throw IntegrityError(inst.id + ": C3 answer must be SmilesSet");
  std::set<std::string> missing;
  for (const auto& m : truth->smiles) missing.insert(canonical_smiles(m));

  C3Score s;
  std::set<std::string> invalid;
  for (const std::string& raw : extract_tagged(text, "smiles")) {
    if (raw.empty()) {
      invalid.insert(raw);
      continue;
    }
    auto mol = try_parse_smiles(raw);
    if (mol) s.predicted.insert(canonical_smiles(*mol));
    else invalid.insert(raw);
  }
  s.n_invalid = invalid.size();
  std::size_t hits = 0;
  for (const auto& p : s.predicted) hits += missing.count(p);
  const std::size_t denom = s.predicted.size() + s.n_invalid;
  s.recall = missing.empty() ? 0.0
                             : static_cast<double>(hits) / static_cast<double>(missing.size());
  s.precision = denom ? static_cast<double>(hits) / static_cast<double>(denom) : 0.0;
  if (s.recall + s.precision > 0) {
    s.f1 = 2 * s.recall * s.precision / (s.recall + s.precision);
  }
  return s;
}

std::string_view to_string(C4Criterion c) {
  switch (c) {
    case C4Criterion::kNone: return "none";
    case C4Criterion::kValid: return "valid_smiles";
    case C4Criterion::kSubstructure: return "substructure_of_parent";
    case C4Criterion::kSize: return "min_atoms";
    case C4Criterion::kTarget: return "target_sum";
  }
  return "none";
}

C4Score score_c4(const TaskInstance& inst, std::string_view text) {
  const auto* truth = std::get_if<MotifMap>(&inst.answer);
  if (!truth) throw IntegrityError(inst.id + ": C4 answer must be MotifMap");
  const auto parents = inst.gen_params.at("molecules").get<std::vector<std::string>>();
  const int min_atoms = inst.gen_params.value("min_motif_atoms", 6);
  const FgKind kind = parse_fg_kind(truth->fg_kind);
  const int n = static_cast<int>(parents.size());

  C4Score s;
  s.motifs = extract_motifs(text);
  std::vector<MolGraph> motifs;
  for (int i = 0; i < n; ++i) {
    auto it = s.motifs.find(i);
    std::optional<MolGraph> m;
    if (it != s.motifs.end() && !it->second.empty()) m = try_parse_smiles(it->second);
    if (!m || m->n_atoms() == 0) {
      s.failed = C4Criterion::kValid;
      return s;
    }
    motifs.push_back(std::move(*m));
  }
  for (int i = 0; i < n; ++i) {
    if (!motifs[i].is_connected() || !is_subgraph(motifs[i], parse_smiles(parents[i]))) {
      s.failed = C4Criterion::kSubstructure;
      return s;
    }
  }
  for (int i = 0; i < n; ++i) {
    if (motifs[i].n_atoms() < min_atoms) {
      s.failed = C4Criterion::kSize;
      return s;
    }
  }
  for (const auto& m : motifs) s.total += count_fg(m, kind);
  if (s.total != truth->target) {
    s.failed = C4Criterion::kTarget;
    return s;
  }
  s.complete = true;
  return s;
}

}  // namespace rel::chem
