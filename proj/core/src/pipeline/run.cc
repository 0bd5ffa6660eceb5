#include "issr/pipeline/run.h"

#include <algorithm>
#include <future>

#include <nlohmann/json.hpp>

#include "issr/core/blank.h"
#include "issr/core/error.h"
#include "issr/core/hash.h"
#include "issr/core/json.h"
#include "issr/pipeline/validator.h"

namespace issr::pipeline {

std::string_view to_string(StopReason reason) {
  switch (reason) {
    case StopReason::kTargetReached:
      return "target_reached";
    case StopReason::kPoolExhausted:
      return "pool_exhausted";
    case StopReason::kMaxRounds:
      return "max_rounds";
  }
  return "unknown";
}

namespace {

std::vector<Verdict> validate_all(modelio::ChatClient& chat, const modelio::PromptSet& prompts,
                                  const QuestionItem& item, const std::vector<std::string>& words,
                                  const PipelineConfig& config, const ModelCall& call) {
  std::vector<Verdict> verdicts;
  verdicts.reserve(words.size());
  if (!config.parallel_validation || words.size() < 2) {
    for (const auto& w : words) verdicts.push_back(validate(chat, prompts, item, w, config.validator_strategy, call));
    return verdicts;
  }
  std::vector<std::future<Verdict>> pending;
  for (const auto& w : words) {
    pending.push_back(std::async(std::launch::async, [&, w] {
      return validate(chat, prompts, item, w, config.validator_strategy, call);
    }));
  }
  for (auto& f : pending) verdicts.push_back(f.get());
  return verdicts;
}

nlohmann::json dropped_json(const std::vector<DroppedWord>& dropped) {
  auto out = nlohmann::json::array();
  for (const auto& d : dropped) out.push_back({{"word", d.word}, {"reason", d.reason}});
  return out;
}

}  // namespace

IssrResult run_rounds(modelio::ChatClient& chat, const modelio::PromptSet& prompts, const QuestionItem& item,
                      CandidatePool pool, const PipelineConfig& config) {
  config.validate();
  QuestionItem normalized = item;
  normalized.stem = normalize_blank(item.stem);
  const ModelCall call = ModelCall::from_config(config);

  IssrResult result;
  result.initial_pool = pool.items;
  result.pool = std::move(pool);
  std::vector<std::string> avoid(result.pool.consumed.begin(), result.pool.consumed.end());
  const auto target = static_cast<std::size_t>(config.target_count);

  for (int round = 1; round <= config.max_rounds; ++round) {
    if (result.distractors.size() >= target || result.pool.exhausted()) break;
    const std::vector<std::string> offered = result.pool.words();
    const int k = static_cast<int>(std::min({static_cast<std::size_t>(config.k_per_round),
                                             target - result.distractors.size(), offered.size()}));

    RoundAudit audit;
    audit.round = round;
    audit.offered = offered;
    audit.selection = select_round(chat, prompts, normalized, offered, k, avoid, call);
    audit.verdicts = validate_all(chat, prompts, normalized, audit.selection.words, config, call);

    for (const auto& v : audit.verdicts) {
      result.pool.consume(v.distractor);
      avoid.push_back(v.distractor);
      if (v.valid && result.distractors.size() < target) result.distractors.push_back(v.distractor);
      result.verdicts.push_back(v);
    }
    result.rounds_used = round;
    result.audit.push_back(std::move(audit));
  }

  if (result.distractors.size() >= target) {
    result.stop = StopReason::kTargetReached;
  } else if (result.pool.exhausted()) {
    result.stop = StopReason::kPoolExhausted;
  } else {
    result.stop = StopReason::kMaxRounds;
  }
  return result;
}

IssrResult run_issr(const IssrClients& clients, const QuestionItem& item, const lexicon::Lexicon& lexicon,
                    const PipelineConfig& config, const modelio::PromptSet& prompts, const PosTagger& tagger) {
  config.validate();
  CandidatePool pool = generate_candidates(item, clients.masked, lexicon, config, tagger);
  return run_rounds(clients.chat, prompts, item, std::move(pool), config);
}

nlohmann::json audit_record(const RoundAudit& round) {
  nlohmann::json j;
  j["round"] = round.round;
  j["offered"] = round.offered;
  const auto& attempts = round.selection.attempts;
  if (!attempts.empty()) {
    const auto& first = attempts.front();
    j["prompt_hash"] = hex64(fnv1a64(first.prompt));
    j["reply"] = first.reply;
    j["parsed"] = first.parsed;
    j["dropped"] = dropped_json(first.dropped);
  }
  if (attempts.size() > 1) {
    const auto& retry = attempts[1];
    j["retry"] = {{"prompt_hash", hex64(fnv1a64(retry.prompt))},
                  {"reply", retry.reply},
                  {"parsed", retry.parsed},
                  {"dropped", dropped_json(retry.dropped)}};
  }
  j["selected"] = round.selection.words;
  j["verdicts"] = round.verdicts;
  return j;
}

std::string audit_jsonl(const IssrResult& result, const std::string& item_id) {
  std::string out;
  nlohmann::json generation;
  generation["id"] = item_id;
  generation["round"] = 0;
  generation["fetched"] = result.pool.fetched;
  generation["pool"] = result.initial_pool;
  generation["filtered_out"] = nlohmann::json::array();
  for (const auto& r : result.pool.filtered_out) {
    generation["filtered_out"].push_back({{"word", r.word}, {"reason", r.reason}});
  }
  out += generation.dump() + '\n';
  for (const auto& round : result.audit) {
    nlohmann::json j = audit_record(round);
    j["id"] = item_id;
    out += j.dump() + '\n';
  }
  nlohmann::json summary{{"id", item_id},
                         {"distractors", result.distractors},
                         {"rounds_used", result.rounds_used},
                         {"stop", std::string(to_string(result.stop))}};
  out += summary.dump() + '\n';
  return out;
}

}  // namespace issr::pipeline
