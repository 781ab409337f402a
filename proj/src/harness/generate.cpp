#include "rel/harness/generate.hpp"

#include <filesystem>
#include <memory>

#include "rel/algebra/generate.hpp"
#include "rel/chem/bank.hpp"
#include "rel/chem/tasks.hpp"
#include "rel/core/error.hpp"
#include "rel/epistasis/b2.hpp"
#include "rel/epistasis/landscape_io.hpp"
#include "rel/phylo/b1.hpp"

namespace rel::harness {
namespace {

std::string resolve(const std::string& base, const std::string& path) {
  std::filesystem::path p(path);
  if (p.is_absolute()) return path;
  return (std::filesystem::path(base) / p).string();
}

algebra::ValueDomain domain_of(const Json& j, const char* key, algebra::ValueDomain def) {
  if (!j.contains(key)) return def;
  auto v = j.at(key).get<std::vector<std::int64_t>>();
  if (v.size() != 2 || v[0] > v[1])
    throw ParameterError(std::string(key) + " must be [lo, hi] with lo <= hi");
  return {v[0], v[1]};
}

algebra::RuleSpec rule_of(TaskCode code, const Json& j) {
  algebra::RuleSpec r;
  r.code = code;
  if (j.contains("increment")) r.increment = j.at("increment").get<std::int64_t>();
  r.signs = j.value("signs", std::vector<int>{});
  r.modulus = j.value("modulus", 0);
  r.maxval = j.value("maxval", std::int64_t{0});
  return r;
}

// Cartesian product of the sweep overrides applied to the base object.
std::vector<Json> configurations(const Json& params) {
  Json base = params;
  base.erase("sweep");
  std::vector<Json> out{base};
  if (!params.contains("sweep")) return out;
  const Json& sweep = params.at("sweep");
  if (!sweep.is_object()) throw ParameterError("sweep must be an object of value lists");
  for (auto it = sweep.begin(); it != sweep.end(); ++it) {
    if (!it.value().is_array() || it.value().empty())
      throw ParameterError("sweep." + it.key() + " must be a non-empty list");
    std::vector<Json> next;
    for (const Json& cfg : out) {
      for (const Json& v : it.value()) {
        Json c = cfg;
        c[it.key()] = v;
        next.push_back(std::move(c));
      }
    }
    out = std::move(next);
  }
  return out;
}

// Heavy shared inputs, loaded once per call.
struct Resources {
  std::string base_dir;
  std::unique_ptr<chem::MoleculeBank> bank;
  std::unique_ptr<std::vector<chem::PoolEntry>> pool;
  chem::IsomerCache cache;
  std::vector<epistasis::LocalLandscape> landscapes;
  std::string landscape_source;

  const chem::MoleculeBank& get_bank(const Json& cfg) {
    if (!bank) {
      bank = std::make_unique<chem::MoleculeBank>(chem::load_bank(
          resolve(base_dir, cfg.value("bank", "data/bank_demo.smi")),
          cfg.value("bank_min_heavy", 15), cfg.value("bank_max_heavy", 60)));
      if (bank->entries.empty()) throw ParameterError("molecule bank is empty");
    }
    return *bank;
  }
  const std::vector<chem::PoolEntry>& get_pool(const Json& cfg) {
    if (!pool) {
      pool = std::make_unique<std::vector<chem::PoolEntry>>(
          chem::load_formula_pool(resolve(base_dir, cfg.value("pool", "data/formulas.txt"))));
    }
    return *pool;
  }
};

TaskInstance generate_one(TaskCode code, const Json& cfg, SeededRng rng, std::size_t i,
                          Resources& res) {
  switch (code) {
    case TaskCode::A1: case TaskCode::A2: case TaskCode::A3: case TaskCode::A4: {
      algebra::MatrixOptions o;
      o.rule = rule_of(code, cfg);
      o.n = cfg.value("n", 3);
      o.domain = domain_of(cfg, "domain", o.domain);
      o.increment_range = domain_of(cfg, "increment_range", o.increment_range);
      o.distractor_radius = cfg.value("distractor_radius", std::int64_t{0});
      const std::string fmt = cfg.value("format", "rows");
      if (fmt == "pipe") o.format = algebra::MatrixFormat::kPipe;
      else if (fmt != "rows") throw ParameterError("format must be rows or pipe");
      return algebra::gen_matrix_task(o, rng);
    }
    case TaskCode::A5: case TaskCode::A6: case TaskCode::A7: {
      algebra::TensorOptions o;
      o.rule = rule_of(code, cfg);
      o.n = cfg.value("n", 3);
      o.k_slices = cfg.value("k_slices", 3);
      o.seed_domain = domain_of(cfg, "seed_domain", o.seed_domain);
      o.restart_cap = cfg.value("restart_cap", 50);
      o.max_sweeps = cfg.value("max_sweeps", 1000);
      return algebra::gen_tensor_task(o, rng);
    }
    case TaskCode::B1:
      return phylo::gen_b1(phylo::b1_params_from_json(cfg), rng);
    case TaskCode::B2: {
      epistasis::B2Options o;
      o.tau_factor = cfg.value("tau_factor", epistasis::kDefaultTauFactor);
      if (!res.landscapes.empty()) {
        o.source = res.landscape_source;
        return epistasis::gen_b2(res.landscapes[i % res.landscapes.size()], rng, o);
      }
      const int k = cfg.value("k", 3);
      const std::string cls = cfg.value("class", "random");
      epistasis::StructureClass target;
      if (cls == "random") {
        auto classes = epistasis::classes_for_k(k);
        SeededRng crng = rng.split("class");
        target = classes[crng.uniform_index(classes.size())];
      } else {
        target = epistasis::parse_structure_class(cls);
      }
      SeededRng lrng = rng.split("landscape");
      auto land = epistasis::synth_landscape(k, target, cfg.value("noise", 0.01), lrng,
                                             cfg.value("max_tries", 200));
      return epistasis::gen_b2(land, rng.split("instance"), o);
    }
    case TaskCode::C1: {
      auto p = chem::c1_params_from_json(cfg);
      // "balanced": alternate Yes/No by instance index for an exact 50/50 split.
      if (!p.yes && cfg.value("balanced", false)) p.yes = i % 2 == 0;
      return chem::gen_c1(res.get_pool(cfg), res.cache, p, rng);
    }
    case TaskCode::C2:
      return chem::gen_c2(res.get_bank(cfg), chem::c2_params_from_json(cfg), rng);
    case TaskCode::C3:
      return chem::gen_c3(res.get_pool(cfg), res.cache, chem::c3_params_from_json(cfg), rng);
    case TaskCode::C4:
      return chem::gen_c4(res.get_bank(cfg), chem::c4_params_from_json(cfg), rng);
  }
  throw ParameterError("unknown task code");
}

}  // namespace

std::vector<TaskInstance> generate_tasks(TaskCode code, const Json& params, std::uint64_t seed,
                                         const std::string& base_dir) {
  if (!params.is_object()) throw ParameterError("parameters must be a JSON object");
  const SeededRng root(seed);
  if (code == TaskCode::B1 && params.contains("vary")) {
    return phylo::gen_b1_sweep(phylo::b1_schedule_from_json(params), root,
                               params.value("threads", 0u));
  }
  Resources res;
  res.base_dir = base_dir;
  if (code == TaskCode::B2 && params.contains("landscapes")) {
    const std::string path = resolve(base_dir, params.at("landscapes").get<std::string>());
    res.landscapes = epistasis::load_fitness_table(path).landscapes;
    res.landscape_source = std::filesystem::path(path).filename().string();
    if (res.landscapes.empty()) throw ParameterError("no complete landscape in " + path);
  }
  std::vector<TaskInstance> out;
  std::size_t i = 0;
  for (const Json& cfg : configurations(params)) {
    const int count = cfg.value("count", 1);
    if (count < 0) throw ParameterError("count must be >= 0");
    for (int c = 0; c < count; ++c, ++i) {
      out.push_back(generate_one(code, cfg, root.split(static_cast<std::uint64_t>(i)), i, res));
    }
  }
  return out;
}

}  // namespace rel::harness
