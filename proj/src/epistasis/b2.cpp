#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <set>

#include <fmt/format.h>

#include "rel/core/error.hpp"
#include "rel/core/text.hpp"
#include "rel/epistasis/b2.hpp"

namespace rel::epistasis {
namespace {

using C = StructureClass;

constexpr std::string_view kAminoAcids = "ACDEFGHIKLMNPQRSTVWY";

double round6(double v) { return std::round(v * 1e6) / 1e6; }

std::uint32_t bit(int i) { return 1u << i; }

std::vector<int> members(std::uint32_t m) {
  std::vector<int> out;
  for (int i = 0; m; ++i, m >>= 1) {
    if (m & 1u) out.push_back(i);
  }
  return out;
}

std::string list_names(const std::vector<std::string>& names,
                       const std::vector<int>& idx) {
  std::string out;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (i) out += i + 1 == idx.size() ? " and " : ", ";
    out += names[idx[i]];
  }
  return out;
}

// Interaction coefficients that produce `target`; p is a random ordering
// of the mutations so the structure lands on random positions.
void plant(std::vector<double>& w, StructureClass target,
           const std::vector<int>& p, SeededRng& rng) {
  auto mag = [&] { return rng.uniform_real(1.0, 2.0); };
  auto sign = [&] { return rng.bernoulli(0.5) ? 1.0 : -1.0; };
  auto set = [&](std::initializer_list<int> idx, double v) {
    std::uint32_t m = 0;
    for (int i : idx) m |= bit(p[i]);
    w[m] = v;
  };
  const double lead = 1.5 * mag() * sign();
  switch (target) {
    case C::kPositive: set({0, 1}, std::abs(lead)); break;
    case C::kNegative: set({0, 1}, -std::abs(lead)); break;
    case C::kIndependent:
    case C::kNone: break;
    case C::kDominantPair:
    case C::kPairIndependent:
    case C::kMostlyIndependent: set({0, 1}, lead); break;
    case C::kThreeWay:
    case C::kTrioIndependent:
      set({0, 1}, lead);
      set({0, 1, 2}, mag() * sign());
      break;
    case C::kHub:
    case C::kHubIndependent:
      set({0, 1}, lead);
      set({0, 2}, mag() * sign());
      break;
    case C::kBroadCoupling:
      set({0, 1}, lead);
      set({2, 3}, mag() * sign());
      break;
    case C::kAdditionalGroup:
      set({0, 1}, lead);
      set({0, 1, 2}, mag() * sign());
      set({3, 4}, mag() * sign());
      break;
    case C::kBroadlyCoupled:
      set({0, 1}, lead);
      set({0, 1, 2}, mag() * sign());
      set({2, 3}, mag() * sign());
      set({1, 4}, mag() * sign());
      break;
  }
}

bool is_word(char c) { return std::isalnum(static_cast<unsigned char>(c)); }

}  // namespace

std::vector<std::string> default_labels(int k, SeededRng& rng) {
  std::vector<std::size_t> pos = rng.sample_indices(300, k);
  std::sort(pos.begin(), pos.end());
  std::vector<std::string> out;
  for (std::size_t p : pos) {
    char wt = kAminoAcids[rng.uniform_index(kAminoAcids.size())];
    char mt;
    do {
      mt = kAminoAcids[rng.uniform_index(kAminoAcids.size())];
    } while (mt == wt);
    out.push_back(fmt::format("{}{}{}", wt, p + 1, mt));
  }
  return out;
}

LocalLandscape synth_landscape(int k, StructureClass target, double noise,
                               SeededRng& rng, int max_tries) {
  auto allowed = classes_for_k(k);
  if (std::find(allowed.begin(), allowed.end(), target) == allowed.end()) {
    throw ParameterError(fmt::format("class {} is not defined for k={}",
                                     to_string(target), k));
  }
  if (k > 12) throw ParameterError("synthetic landscapes support k <= 12");
  LocalLandscape land;
  land.k = k;
  land.labels = default_labels(k, rng);
  land.background_id = "synthetic";
  for (int attempt = 0; attempt < max_tries; ++attempt) {
    std::vector<double> w(std::size_t{1} << k, 0.0);
    w[0] = rng.uniform_real(0.5, 2.5);
    for (int i = 0; i < k; ++i) w[bit(i)] = rng.uniform_real(-0.5, 0.5);
    std::vector<int> perm(k);
    for (int i = 0; i < k; ++i) perm[i] = i;
    rng.shuffle(perm);
    plant(w, target, perm, rng);
    land.fitness = reconstruct_fitness(w);
    for (double& f : land.fitness) {
      f = round6(f + (noise > 0 ? rng.uniform_real(-noise, noise) : 0.0));
    }
    if (classify_structure(mobius_coefficients(land), k).cls == target) {
      return land;
    }
  }
  throw ParameterError(fmt::format("could not synthesize a {} landscape",
                                   to_string(target)));
}

std::string verbalize(StructureClass cls, const StructureLabel& label,
                      const std::vector<std::string>& names) {
  const int k = static_cast<int>(names.size());
  std::vector<int> pair = members(label.s2);
  const std::string a = names[pair[0]];
  const std::string b = names[pair[1]];
  std::vector<int> all(k);
  for (int i = 0; i < k; ++i) all[i] = i;
  const std::uint32_t full = (1u << k) - 1;
  std::string c, d, h = names[label.hub];
  if (k >= 3) c = names[std::countr_zero(label.s3 & ~label.s2)];
  if (k == 4) d = names[std::countr_zero(full & ~label.s3)];

  switch (cls) {
    case C::kPositive:
    case C::kNegative:
      return fmt::format(
          "{} and {} modify each other's effects — the double mutation "
          "fitness is {} than predicted by adding each mutation's individual "
          "effect.",
          a, b, cls == C::kPositive ? "HIGHER" : "LOWER");
    case C::kIndependent:
      return fmt::format(
          "{} and {} act independently — the double mutation fitness is well "
          "predicted by adding each mutation's individual effect.",
          a, b);
    case C::kNone:
      return list_names(names, all) +
             " act independently — every combination is well predicted by "
             "adding each mutation's individual effect.";
    case C::kDominantPair:
      return fmt::format(
          "{} and {} modify each other's effects, while {} acts "
          "independently — its effect simply adds on top of the pair.",
          a, b, c);
    case C::kThreeWay:
      return fmt::format(
          "{}, {} and {} interact jointly — the interaction between {} and {} "
          "changes depending on whether {} is present, beyond what pairwise "
          "effects explain.",
          a, b, c, a, b, c);
    case C::kHub:
      return fmt::format(
          "{} acts as a hub — it modifies the effects of each of the other "
          "mutations in pairs, without a strong three-way interaction.",
          h);
    case C::kPairIndependent: {
      std::vector<int> rest;
      for (int i : all) {
        if (!(label.s2 & bit(i))) rest.push_back(i);
      }
      return fmt::format(
          "{} and {} modify each other's effects, while {} act "
          "independently.",
          a, b, list_names(names, rest));
    }
    case C::kTrioIndependent:
      return fmt::format(
          "{}, {} and {} interact jointly beyond their pairwise effects, while "
          "{} acts independently.",
          a, b, c, d);
    case C::kHubIndependent:
      return fmt::format(
          "{} acts as a hub, modifying the effects of several other mutations "
          "in pairs, while {} acts independently.",
          h, d);
    case C::kBroadCoupling:
      return "All four mutations are coupled — interactions connect " +
             list_names(names, all) + ", so none of them acts independently.";
    case C::kMostlyIndependent:
    case C::kAdditionalGroup:
    case C::kBroadlyCoupled: {
      std::vector<int> rest;
      for (int i : all) {
        if (!(label.s3 & bit(i))) rest.push_back(i);
      }
      std::string head = fmt::format(
          "{} and {} form the leading interacting pair, strengthened by {}; "
          "the remaining mutations ({}) ",
          a, b, c, list_names(names, rest));
      if (cls == C::kMostlyIndependent) return head + "act mostly independently.";
      if (cls == C::kAdditionalGroup) {
        return head + "form a separate interacting group of their own.";
      }
      return head + "are broadly coupled with this core.";
    }
  }
  return {};
}

std::string render_b2_prompt(const LocalLandscape& land,
                             const std::vector<std::string>& options) {
  const std::size_t n = land.fitness.size();
  std::vector<std::uint32_t> order(n);
  for (std::uint32_t m = 0; m < n; ++m) order[m] = m;
  std::sort(order.begin(), order.end(), [&](std::uint32_t x, std::uint32_t y) {
    return genotype_string(x, land.k) < genotype_string(y, land.k);
  });
  std::vector<std::string> names;
  std::size_t width = 14;
  for (std::uint32_t m : order) {
    std::string name;
    if (m == 0) {
      name = "wild-type";
    } else {
      for (int i : members(m)) {
        if (!name.empty()) name += " + ";
        name += land.labels[i];
      }
    }
    width = std::max(width, name.size() + 2);
    names.push_back(std::move(name));
  }
  std::string out = fmt::format(
      "A protein has been measured with the following mutations at {} "
      "positions.\nBelow are the measured fitness values for all {} "
      "combinations:\n",
      land.k, n);
  out += fmt::format("{:<{}}Fitness\n", "Genotype", width);
  for (std::size_t r = 0; r < n; ++r) {
    out += fmt::format("{:<{}}{}\n", names[r], width,
                       format_fixed(land.fitness[order[r]], 6));
  }
  out += "Which of the following is the best explanation of the full table?\n";
  for (std::size_t i = 0; i < options.size(); ++i) {
    out += fmt::format("{}. {}\n\n", static_cast<char>('A' + i), options[i]);
  }
  out += "Answer with just the letter.";
  return out;
}

TaskInstance gen_b2(const LocalLandscape& source, SeededRng rng,
                    const B2Options& opts) {
  LocalLandscape land = source;
  check_landscape(land);
  if (land.k < 2) throw ParameterError("B2 needs k >= 2");
  for (double& f : land.fitness) f = round6(f);
  WalshSpectrum spec = mobius_coefficients(land, opts.tau_factor);
  StructureLabel label = classify_structure(spec, land.k);

  std::vector<StructureClass> classes = classes_for_k(land.k);
  SeededRng opt_rng = rng.split("options");
  if (land.k == 4) {
    std::vector<StructureClass> others;
    for (StructureClass c : classes) {
      if (c != label.cls) others.push_back(c);
    }
    classes = {label.cls};
    for (std::size_t i : opt_rng.sample_indices(others.size(), 3)) {
      classes.push_back(others[i]);
    }
  }
  if (land.k >= 3) opt_rng.shuffle(classes);
  std::vector<std::string> options;
  Json class_names = Json::array();
  int correct = 0;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    options.push_back(verbalize(classes[i], label, land.labels));
    class_names.push_back(std::string(to_string(classes[i])));
    if (classes[i] == label.cls) correct = static_cast<int>(i);
  }

  TaskInstance inst;
  inst.domain = Domain::kBiology;
  inst.task_code = TaskCode::B2;
  inst.seed = rng.seed();
  Json gp;
  gp["k"] = land.k;
  gp["labels"] = land.labels;
  gp["background_id"] = land.background_id;
  Json fit = Json::object();
  for (std::uint32_t m = 0; m < land.fitness.size(); ++m) {
    fit[genotype_string(m, land.k)] = land.fitness[m];
  }
  gp["fitness"] = std::move(fit);
  gp["class"] = std::string(to_string(label.cls));
  gp["options"] = std::move(class_names);
  gp["tau_factor"] = opts.tau_factor;
  gp["source"] = opts.source;
  if (!rng.path().empty()) gp["rng_path"] = join(rng.path(), "/");
  inst.gen_params = std::move(gp);
  inst.rc = expected_rc(TaskCode::B2, inst.gen_params);
  inst.prompt = render_b2_prompt(land, options);
  inst.answer = Letter{static_cast<char>('A' + correct),
                       static_cast<int>(options.size())};
  inst.oc_params["n_rows"] = static_cast<double>(land.fitness.size());
  inst.oc_params["prompt_chars"] = static_cast<double>(inst.prompt.size());
  inst.id = instance_id(inst.task_code, inst.gen_params, inst.seed);
  return inst;
}

std::optional<char> parse_letter(std::string_view text, int n_options) {
  std::string_view t = trim(text);
  // A bare letter, possibly lowercase and punctuated: "c", "C.", "(b)".
  std::string core;
  for (char ch : t) {
    if (std::isalnum(static_cast<unsigned char>(ch))) core += ch;
  }
  if (core.size() == 1 && std::isalpha(static_cast<unsigned char>(core[0]))) {
    char up = static_cast<char>(std::toupper(static_cast<unsigned char>(core[0])));
    if (up >= 'A' && up < 'A' + n_options) return up;
    return std::nullopt;
  }
  std::set<char> seen;
  for (std::size_t i = 0; i < t.size(); ++i) {
    char ch = t[i];
    if (ch < 'A' || ch >= 'A' + n_options) continue;
    if (i > 0 && is_word(t[i - 1])) continue;
    if (i + 1 < t.size() && is_word(t[i + 1])) continue;
    seen.insert(ch);
  }
  if (seen.size() != 1) return std::nullopt;
  return *seen.begin();
}

B2Score score_b2(const TaskInstance& inst, std::string_view text) {
  const auto* truth = std::get_if<Letter>(&inst.answer);
  if (!truth) throw ParameterError("score_b2 expects a Letter answer");
  B2Score s;
  s.parsed = parse_letter(text, truth->n_options);
  s.correct = s.parsed && *s.parsed == truth->letter;
  return s;
}

}  // namespace rel::epistasis
