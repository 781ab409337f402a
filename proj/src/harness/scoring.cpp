#include "rel/harness/scoring.hpp"

#include <fmt/format.h>

#include "rel/algebra/scoring.hpp"
#include "rel/chem/smiles.hpp"
#include "rel/chem/tasks.hpp"
#include "rel/core/error.hpp"
#include "rel/core/text.hpp"
#include "rel/epistasis/b2.hpp"
#include "rel/phylo/b1.hpp"

namespace rel::harness {

ScoreResult score_response(const TaskInstance& inst, std::string_view text) {
  ScoreResult r;
  switch (inst.task_code) {
    case TaskCode::A1: case TaskCode::A2: case TaskCode::A3: case TaskCode::A4:
    case TaskCode::A5: case TaskCode::A6: case TaskCode::A7: {
      auto s = algebra::score_choice(inst, text);
      r.correct = s.outcome == algebra::ChoiceOutcome::kCorrect;
      r.parsed = s.parsed.has_value();
      if (s.parsed) r.answer = *s.parsed;
      r.detail["outcome"] = std::string(algebra::to_string(s.outcome));
      break;
    }
    case TaskCode::B1: {
      auto s = phylo::score_b1(inst, text);
      r.correct = s.correct;
      r.parsed = s.response.parsed;
      if (r.parsed) {
        r.answer = {{"yes", s.response.yes}, {"taxa", s.response.taxa}};
      }
      break;
    }
    case TaskCode::B2: {
      const auto& letter = std::get<Letter>(inst.answer);
      auto s = epistasis::score_b2(inst, text);
      r.correct = s.correct;
      r.parsed = s.parsed.has_value();
      if (s.parsed) r.answer = std::string(1, *s.parsed);
      r.detail["n_options"] = letter.n_options;
      break;
    }
    case TaskCode::C1: {
      auto s = chem::score_c1(inst, text);
      r.correct = s.correct;
      r.parsed = s.parsed.has_value();
      if (s.parsed) r.answer = *s.parsed;
      break;
    }
    case TaskCode::C2: {
      auto s = chem::score_c2(inst, text);
      r.score = s.substructure;
      r.correct = s.exact;
      r.parsed = s.parsed.has_value();
      if (s.parsed) {
        auto canon = chem::try_canonical(*s.parsed);
        r.answer = canon ? *canon : *s.parsed;
      }
      r.detail["substructure"] = s.substructure;
      r.detail["exact"] = s.exact;
      break;
    }
    case TaskCode::C3: {
      auto s = chem::score_c3(inst, text);
      r.score = s.recall;
      r.correct = s.recall == 1.0 && s.precision == 1.0;
      r.parsed = !s.predicted.empty() || s.n_invalid > 0;
      Json invalid = Json::array();
      for (const auto& raw : chem::extract_tagged(text, "smiles")) {
        if (!chem::try_parse_smiles(raw)) invalid.push_back(raw);
      }
      if (r.parsed) r.answer = {{"valid", s.predicted}, {"invalid", invalid}};
      r.detail["recall"] = s.recall;
      r.detail["precision"] = s.precision;
      r.detail["f1"] = s.f1;
      r.detail["n_invalid"] = s.n_invalid;
      break;
    }
    case TaskCode::C4: {
      auto s = chem::score_c4(inst, text);
      r.correct = s.complete;
      r.parsed = !s.motifs.empty();
      if (r.parsed) {
        Json m = Json::object();
        for (const auto& [i, smi] : s.motifs) m[std::to_string(i)] = smi;
        r.answer = {{"motifs", m}};
      }
      r.detail["failed"] = std::string(chem::to_string(s.failed));
      r.detail["total"] = s.total;
      break;
    }
  }
  if (inst.task_code != TaskCode::C2 && inst.task_code != TaskCode::C3) {
    r.score = r.correct ? 1.0 : 0.0;
  }
  return r;
}

std::string answer_text(const TaskInstance& inst, const Json& answer) {
  if (answer.is_null()) return "";
  switch (inst.task_code) {
    case TaskCode::A1: case TaskCode::A2: case TaskCode::A3: case TaskCode::A4:
    case TaskCode::A5: case TaskCode::A6: case TaskCode::A7:
      return std::to_string(answer.get<std::int64_t>());
    case TaskCode::B1: {
      if (!answer.at("yes").get<bool>()) return "No";
      auto taxa = answer.at("taxa").get<std::vector<std::string>>();
      return "Yes\nTaxa: " + join(taxa, ", ");
    }
    case TaskCode::B2: return answer.get<std::string>();
    case TaskCode::C1: return answer.get<bool>() ? "<Yes>" : "<No>";
    case TaskCode::C2: return "<smiles>" + answer.get<std::string>() + "</smiles>";
    case TaskCode::C3: {
      std::string out;
      for (const char* key : {"valid", "invalid"}) {
        for (const auto& s : answer.at(key)) {
          out += "<smiles>" + s.get<std::string>() + "</smiles>\n";
        }
      }
      return out;
    }
    case TaskCode::C4: {
      std::vector<std::string> idx;
      std::string body;
      const Json& m = answer.at("motifs");
      for (auto it = m.begin(); it != m.end(); ++it) {
        idx.push_back(it.key());
        body += fmt::format("<motif_{0}>{1}</motif_{0}>\n", it.key(),
                            it.value().get<std::string>());
      }
      return "<indices>" + join(idx, ",") + "</indices>\n" + body;
    }
  }
  return "";
}

std::string reference_response(const TaskInstance& inst) {
  return std::visit(
      [&](const auto& a) -> std::string {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, ChoiceIndex>) {
          return std::to_string(a.value());
        } else if constexpr (std::is_same_v<T, YesNoTaxa>) {
          if (inst.task_code == TaskCode::C1) return a.yes ? "<Yes>" : "<No>";
          return answer_text(inst, Json{{"yes", a.yes}, {"taxa", a.taxa}});
        } else if constexpr (std::is_same_v<T, Letter>) {
          return std::string(1, a.letter);
        } else if constexpr (std::is_same_v<T, Smiles>) {
          return "<smiles>" + a.smiles + "</smiles>";
        } else if constexpr (std::is_same_v<T, SmilesSet>) {
          std::string out;
          for (const auto& s : a.smiles) out += "<smiles>" + s + "</smiles>\n";
          return out;
        } else {
          Json m = Json::object();
          for (const auto& [i, s] : a.motifs) m[std::to_string(i)] = s;
          return answer_text(inst, Json{{"motifs", m}});
        }
      },
      inst.answer);
}

Json score_to_json(const ScoreResult& s) {
  return {{"score", s.score},   {"correct", s.correct}, {"parsed", s.parsed},
          {"answer", s.answer}, {"detail", s.detail}};
}

ScoreResult score_from_json(const Json& j) {
  ScoreResult s;
  s.score = j.at("score").get<double>();
  s.correct = j.at("correct").get<bool>();
  s.parsed = j.at("parsed").get<bool>();
  s.answer = j.value("answer", Json(nullptr));
  s.detail = j.value("detail", Json::object());
  return s;
}

}  // namespace rel::harness
