#include "issr/core/json.h"

#include "issr/core/blank.h"
#include "issr/core/error.h"

namespace issr {

using nlohmann::json;

void to_json(json& j, const QuestionItem& item) {
  j = json{{"id", item.id},
           {"stem", item.stem},
           {"answer", item.answer},
           {"distractors", item.gold_distractors}};
  if (item.selection_rates) j["selection_rates"] = *item.selection_rates;
  if (item.pass_rate) j["pass_rate"] = *item.pass_rate;
}

void from_json(const json& j, QuestionItem& item) {
  item.id = j.at("id").get<std::string>();
  item.stem = normalize_blank(j.at("stem").get<std::string>());
  item.answer = to_lower(trim(j.at("answer").get<std::string>()));
  item.gold_distractors.clear();
  if (auto it = j.find("distractors"); it != j.end() && !it->is_null()) {
    for (const auto& d : *it) item.gold_distractors.push_back(to_lower(trim(d.get<std::string>())));
  }
  item.selection_rates.reset();
  if (auto it = j.find("selection_rates"); it != j.end() && !it->is_null()) {
    std::map<std::string, double> rates;
    for (const auto& [word, rate] : it->items()) rates[to_lower(trim(word))] = rate.get<double>();
    item.selection_rates = std::move(rates);
  }
  item.pass_rate.reset();
  if (auto it = j.find("pass_rate"); it != j.end() && !it->is_null()) {
    item.pass_rate = it->get<double>();
  }
  item.validate();
}

void to_json(json& j, const Candidate& c) {
  j = json{{"surface", c.surface}, {"lemma", c.lemma}, {"score", c.score}, {"pos", c.pos.to_string()}};
  j["level"] = c.level ? json(*c.level) : json(nullptr);
}

void from_json(const json& j, Candidate& c) {
  c.surface = j.at("surface").get<std::string>();
  c.lemma = j.value("lemma", c.surface);
  c.score = j.value("score", 0.0);
  c.level.reset();
  if (auto it = j.find("level"); it != j.end() && !it->is_null()) c.level = it->get<int>();
  c.pos = PosSet{};
  const std::string pos = j.value("pos", std::string{});
  std::size_t start = 0;
  while (start < pos.size()) {
    auto comma = pos.find(',', start);
    if (comma == std::string::npos) comma = pos.size();
    if (auto p = parse_pos_code(std::string_view(pos).substr(start, comma - start))) c.pos.insert(*p);
    start = comma + 1;
  }
}

void to_json(json& j, const Verdict& v) {
  j = json{{"distractor", v.distractor},
           {"strategy", std::string(to_string(v.strategy))},
           {"valid", v.valid},
           {"reason", std::string(to_string(v.reason))},
           {"raw_reply", v.raw_reply}};
}

void from_json(const json& j, Verdict& v) {
  auto strategy = parse_strategy(j.at("strategy").get<std::string>());
  auto reason = parse_verdict_reason(j.at("reason").get<std::string>());
  if (!strategy || !reason) throw Error(ErrorCode::kParse, "bad verdict record");
  v = Verdict::make(j.at("distractor").get<std::string>(), *strategy, *reason,
                    j.value("raw_reply", std::string{}));
}

void to_json(json& j, const PipelineConfig& c) {
  j = json{{"pool_cap", c.pool_cap},
           {"k_per_round", c.k_per_round},
           {"target_count", c.target_count},
           {"max_rounds", c.max_rounds},
           {"temperature", c.temperature},
           {"validator_strategy", std::string(to_string(c.validator_strategy))},
           {"length_delta_max", c.length_delta_max},
           {"difficulty_delta_max", c.difficulty_delta_max},
           {"retry_limit", c.retry_limit},
           {"fetch_multiplier", c.fetch_multiplier},
           {"max_tokens", c.max_tokens},
           {"retry_backoff_ms", c.retry_backoff_ms},
           {"parallel_validation", c.parallel_validation},
           {"seed", c.seed}};
}

void from_json(const json& j, PipelineConfig& c) {
  for (const auto& [key, value] : j.items()) {
    if (value.is_string()) {
      apply_setting(c, key, value.get<std::string>());
    } else if (value.is_boolean()) {
      apply_setting(c, key, value.get<bool>() ? "true" : "false");
    } else if (value.is_number_integer() || value.is_number_unsigned()) {
      apply_setting(c, key, value.dump());
    } else if (value.is_number_float()) {
      if (key == "temperature") {
        c.temperature = value.get<double>();
      } else {
        apply_setting(c, key, value.dump());
      }
    } else {
      throw Error(ErrorCode::kInvalidConfig, "bad value for config key '" + key + "'");
    }
  }
}

}  // namespace issr
