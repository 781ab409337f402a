#include <algorithm>
#include <atomic>
#include <cctype>
#include <exception>
#include <mutex>
#include <thread>

#include "rel/core/error.hpp"
#include "rel/core/text.hpp"
#include "rel/phylo/b1.hpp"

namespace rel::phylo {
namespace {

constexpr int kTreeAttempts = 20;
constexpr char kBases[4] = {'A', 'C', 'G', 'T'};

constexpr std::string_view kIntro =
    "Homoplasy refers to structured convergence:\n"
    "pairs or groups of distantly related taxa that repeatedly share the same "
    "nucleotide motifs\n"
    "across many independent alignment columns more often than expected, "
    "while other taxa\n"
    "with similar overall sequences do not share those nucleotide motifs as "
    "consistently.\n"
    "\n"
    "Your job is to examine the entire alignment and provided tree and decide "
    "whether such structured\n"
    "homoplasy is likely to be present and which taxa are involved.\n"
    "\n";

// True when the leaves are at least `min_d` edges apart; stops early.
bool far_enough(const PhyloTree& t, const std::vector<int>& depth, int a,
                int b, int min_d) {
  int d = 0;
  while (a != b) {
    if (d >= min_d) return true;
    if (depth[a] >= depth[b]) {
      a = t.nodes[a].parent;
    } else {
      b = t.nodes[b].parent;
    }
    ++d;
  }
  return d >= min_d;
}

bool is_word(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

void check_params(const B1Params& p) {
  if (p.n_leaves < 2) throw ParameterError("B1 needs n_leaves >= 2");
  if (p.l_seq < 1) throw ParameterError("B1 needs l_seq >= 1");
  if (p.l_motif < 1 || p.l_motif > p.l_seq) {
    throw ParameterError("B1 needs 1 <= l_motif <= l_seq");
  }
  if (p.n_ht < 1 || p.n_ht > p.n_leaves) {
    throw ParameterError("B1 needs 1 <= n_ht <= n_leaves");
  }
  if (p.negative_rate < 0.0 || p.negative_rate > 1.0) {
    throw ParameterError("B1 negative_rate must lie in [0, 1]");
  }
}

}  // namespace

std::set<std::string> choose_distant_taxa(const PhyloTree& tree, int n_ht,
                                          int min_distance, int max_draws,
                                          SeededRng& rng) {
  std::vector<int> leaves = tree.leaves();
  if (n_ht < 1 || n_ht > static_cast<int>(leaves.size())) {
    throw ParameterError("n_ht must lie in [1, n_leaves]");
  }
  std::vector<int> depth = node_depths(tree);
  for (int draw = 0; draw < max_draws; ++draw) {
    std::vector<std::size_t> pick = rng.sample_indices(leaves.size(), n_ht);
    bool ok = true;
    for (std::size_t i = 0; i < pick.size() && ok; ++i) {
      for (std::size_t j = i + 1; j < pick.size() && ok; ++j) {
        ok = far_enough(tree, depth, leaves[pick[i]], leaves[pick[j]],
                        min_distance);
      }
    }
    if (ok) {
      std::set<std::string> taxa;
      for (std::size_t i : pick) taxa.insert(tree.nodes[leaves[i]].label);
      return taxa;
    }
  }
  throw ParameterError("no set of " + std::to_string(n_ht) +
                       " taxa with pairwise distance >= " +
                       std::to_string(min_distance) + " after " +
                       std::to_string(max_draws) + " draws");
}

void inject_motif(Alignment& aln, const HomoplasyPlan& plan) {
  if (plan.start_col < 1 ||
      plan.start_col + plan.motif.size() - 1 > aln.length()) {
    throw ParameterError("motif block runs past the alignment");
  }
  for (const std::string& taxon : plan.taxa) {
    int row = aln.index_of(taxon);
    if (row < 0) throw ParameterError("unknown taxon '" + taxon + "'");
    aln.rows[row].replace(plan.start_col - 1, plan.motif.size(), plan.motif);
  }
}

std::string render_b1_prompt(const Alignment& aln, const PhyloTree& tree) {
  std::string out(kIntro);
  out += "Alignment (FASTA; positions indexed from 1):\n";
  out += to_fasta(aln);
  out += "\nTree (Newick):\n";
  out += to_newick(tree);
  out += "\n\n";
  out += kB1ReturnSentence;
  return out;
}

TaskInstance gen_b1(const B1Params& params, SeededRng rng) {
  check_params(params);
  SeededRng flag_rng = rng.split("negative");
  bool negative = flag_rng.bernoulli(params.negative_rate);

  PhyloTree tree;
  Alignment aln;
  HomoplasyPlan plan;
  int attempt = 0;
  for (;; ++attempt) {
    SeededRng tree_rng = rng.split("tree").split(attempt);
    tree = sample_tree(params.n_leaves, tree_rng, params.label_prefix);
    if (negative) break;
    SeededRng taxa_rng = rng.split("taxa").split(attempt);
    try {
      plan.taxa = choose_distant_taxa(tree, params.n_ht, params.min_distance,
                                      params.max_draws, taxa_rng);
      break;
    } catch (const ParameterError&) {
      if (attempt + 1 >= kTreeAttempts) throw;
    }
  }
  SeededRng seq_rng = rng.split("alignment");
  aln = evolve_alignment(tree, params.l_seq, seq_rng);

  Json gp;
  gp["n_leaves"] = params.n_leaves;
  gp["l_seq"] = params.l_seq;
  gp["l_motif"] = params.l_motif;
  gp["n_ht"] = params.n_ht;
  gp["negative"] = negative;
  gp["negative_rate"] = params.negative_rate;
  gp["min_distance"] = params.min_distance;
  gp["tree_attempts"] = attempt + 1;
  if (!params.label_prefix.empty()) gp["label_prefix"] = params.label_prefix;

  TaskInstance inst;
  inst.domain = Domain::kBiology;
  inst.task_code = TaskCode::B1;
  inst.seed = rng.seed();
  double mean_distance = 0.0;
  if (!negative) {
    SeededRng motif_rng = rng.split("motif");
    plan.n_ht = params.n_ht;
    plan.start_col = static_cast<int>(
        motif_rng.uniform_int(1, params.l_seq - params.l_motif + 1));
    plan.motif.resize(params.l_motif);
    for (char& c : plan.motif) c = kBases[motif_rng.uniform_int(0, 3)];
    inject_motif(aln, plan);
    gp["start_col"] = plan.start_col;
    gp["motif"] = plan.motif;
    std::vector<std::string> taxa(plan.taxa.begin(), plan.taxa.end());
    int pairs = 0;
    for (std::size_t i = 0; i < taxa.size(); ++i) {
      for (std::size_t j = i + 1; j < taxa.size(); ++j) {
        mean_distance += topo_distance(tree, taxa[i], taxa[j]);
        ++pairs;
      }
    }
    if (pairs) mean_distance /= pairs;
  }
  if (!rng.path().empty()) gp["rng_path"] = join(rng.path(), "/");
  inst.gen_params = std::move(gp);
  inst.rc = expected_rc(TaskCode::B1, inst.gen_params);
  inst.prompt = render_b1_prompt(aln, tree);
  inst.answer = YesNoTaxa{!negative, negative ? std::set<std::string>{}
                                              : plan.taxa};
  inst.oc_params["motif_ratio"] =
      static_cast<double>(params.l_motif) / params.l_seq;
  inst.oc_params["l_seq"] = params.l_seq;
  inst.oc_params["n_leaves"] = params.n_leaves;
  inst.oc_params["prompt_chars"] = static_cast<double>(inst.prompt.size());
  if (!negative && params.n_ht >= 2) {
    inst.oc_params["mean_distance"] = mean_distance;
  }
  inst.id = instance_id(inst.task_code, inst.gen_params, inst.seed);
  return inst;
}

B1Response parse_b1(std::string_view text, std::string_view label_prefix) {
  B1Response r;
  const std::string lower = to_lower(text);
  std::size_t flag_end = std::string::npos;
  for (std::size_t i = 0; i < lower.size(); ++i) {
    if (i > 0 && is_word(lower[i - 1])) continue;
    for (std::string_view w : {"yes", "no"}) {
      if (lower.compare(i, w.size(), w) == 0 &&
          (i + w.size() == lower.size() || !is_word(lower[i + w.size()]))) {
        r.parsed = true;
        r.yes = w == "yes";
        flag_end = i + w.size();
        break;
      }
    }
    if (r.parsed) break;
  }
  if (!r.parsed || !r.yes) return r;
  const std::string prefix(label_prefix);
  std::size_t i = flag_end;
  while (i < text.size()) {
    if ((i == 0 || !is_word(text[i - 1])) &&
        text.compare(i, prefix.size(), prefix) == 0) {
      std::size_t j = i + prefix.size();
      std::size_t k = j;
      while (k < text.size() && std::isdigit(static_cast<unsigned char>(text[k]))) {
        ++k;
      }
      if (k > j && (k == text.size() || !is_word(text[k]))) {
        r.taxa.insert(std::string(text.substr(i, k - i)));
        i = k;
        continue;
      }
    }
    ++i;
  }
  return r;
}

B1Score score_b1(const TaskInstance& inst, std::string_view text) {
  const auto* truth = std::get_if<YesNoTaxa>(&inst.answer);
  if (!truth) throw ParameterError("score_b1 expects a YesNoTaxa answer");
  B1Score s;
  s.response = parse_b1(text, inst.gen_params.value("label_prefix", ""));
  s.correct = s.response.parsed && s.response.yes == truth->yes &&
              (!truth->yes || s.response.taxa == truth->taxa);
  return s;
}

B1Params b1_params_from_json(const Json& j, const B1Params& base) {
  B1Params p = base;
  p.n_leaves = j.value("n_leaves", p.n_leaves);
  p.l_seq = j.value("l_seq", p.l_seq);
  p.l_motif = j.value("l_motif", p.l_motif);
  p.n_ht = j.value("n_ht", p.n_ht);
  p.negative_rate = j.value("negative_rate", p.negative_rate);
  p.label_prefix = j.value("label_prefix", p.label_prefix);
  p.max_draws = j.value("max_draws", p.max_draws);
  p.min_distance = j.value("min_distance", p.min_distance);
  return p;
}

B1Schedule b1_schedule_from_json(const Json& j) {
  B1Schedule s;
  B1Params common = b1_params_from_json(j);
  s.baseline = b1_params_from_json(j.value("baseline", Json::object()), common);
  const Json vary = j.value("vary", Json::object());
  for (auto it = vary.begin(); it != vary.end(); ++it) {
    const std::string& key = it.key();
    if (key != "n_leaves" && key != "l_seq" && key != "l_motif" &&
        key != "n_ht") {
      throw ParameterError("B1 schedule cannot vary '" + key + "'");
    }
    s.vary.emplace_back(key, it.value().get<std::vector<int>>());
  }
  s.per_config = j.value("per_config", s.per_config);
  if (s.per_config < 1) throw ParameterError("per_config must be >= 1");
  return s;
}

std::vector<B1Params> expand_schedule(const B1Schedule& s) {
  std::vector<B1Params> out{s.baseline};
  for (const auto& [key, values] : s.vary) {
    for (int v : values) {
      B1Params p = s.baseline;
      if (key == "n_leaves") p.n_leaves = v;
      if (key == "l_seq") p.l_seq = v;
      if (key == "l_motif") p.l_motif = v;
      if (key == "n_ht") p.n_ht = v;
      out.push_back(p);
    }
  }
  return out;
}

std::vector<TaskInstance> gen_b1_sweep(const B1Schedule& s, SeededRng rng,
                                       unsigned threads) {
  std::vector<B1Params> configs = expand_schedule(s);
  const std::size_t total = configs.size() * s.per_config;
  std::vector<TaskInstance> out(total);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex mu;
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= total) return;
      try {
        out[i] = gen_b1(configs[i / s.per_config], rng.split(i));
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!failure) failure = std::current_exception();
        next = total;
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace rel::phylo
