#include "issr/pipeline/selector.h"

#include <algorithm>
#include <set>

#include "issr/core/blank.h"
#include "issr/core/error.h"
#include "issr/modelio/parse.h"

namespace issr::pipeline {

ModelCall ModelCall::from_config(const PipelineConfig& config) {
  return ModelCall{config.temperature, config.max_tokens,
                   modelio::RetryPolicy{config.retry_limit, std::chrono::milliseconds(config.retry_backoff_ms)}};
}

namespace {

SelectionAttempt ask(modelio::ChatClient& client, modelio::PromptRole role, std::string prompt,
                     const QuestionItem& item, std::vector<std::string> offered, int k,
                     std::span<const std::string> avoid, const ModelCall& call) {
  modelio::ChatRequest request;
  request.prompt = std::move(prompt);
  request.temperature = call.temperature;
  request.max_tokens = call.max_tokens;
  request.intent.role = role;
  request.intent.item_id = item.id;
  request.intent.target = item.answer;
  request.intent.options = std::move(offered);
  request.intent.avoid.assign(avoid.begin(), avoid.end());
  request.intent.k = k;

  SelectionAttempt attempt;
  attempt.role = role;
  attempt.prompt = request.prompt;
  attempt.reply = modelio::chat(client, request, call.retry);
  try {
    auto parsed = modelio::parse_enumerated(attempt.reply, -1, item.answer);
    attempt.parsed = std::move(parsed.words);
    for (auto& d : parsed.dropped) attempt.dropped.push_back(DroppedWord{std::move(d.text), std::move(d.reason)});
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kNoParsableLines) throw;
    attempt.dropped.push_back(DroppedWord{attempt.reply, "unparsable"});
  }
  return attempt;
}

// Moves acceptable words from the attempt into `words`, recording the rest.
void admit(SelectionAttempt& attempt, const std::set<std::string>& offered, const std::set<std::string>& avoided,
           std::size_t k, std::vector<std::string>& words) {
  for (const auto& w : attempt.parsed) {
    std::string reason;
    if (avoided.contains(w)) {
      reason = "avoided";
    } else if (!offered.contains(w)) {
      reason = "not_in_pool";
    } else if (std::find(words.begin(), words.end(), w) != words.end()) {
      reason = "duplicate";
    } else if (words.size() >= k) {
      reason = "over_limit";
    } else {
      words.push_back(w);
      continue;
    }
    attempt.dropped.push_back(DroppedWord{w, reason});
  }
}

}  // namespace

SelectionOutcome select_round(modelio::ChatClient& client, const modelio::PromptSet& prompts,
                              const QuestionItem& item, std::span<const std::string> pool, int k,
                              std::span<const std::string> avoid, const ModelCall& call) {
  const std::set<std::string> avoided(avoid.begin(), avoid.end());
  std::vector<std::string> offered;
  for (const auto& w : pool) {
    if (!avoided.contains(w)) offered.push_back(w);
  }
  if (k < 1 || static_cast<std::size_t>(k) > offered.size()) {
    throw Error(ErrorCode::kEmptyPool, "cannot select " + std::to_string(k) + " words from " +
                                           std::to_string(offered.size()) + " on offer");
  }
  const std::set<std::string> offered_set(offered.begin(), offered.end());
  const auto want = static_cast<std::size_t>(k);

  SelectionOutcome out;
  out.attempts.push_back(ask(client, modelio::PromptRole::kSelector,
                             modelio::render_selector_prompt(prompts, item.stem, item.answer, offered, k, avoid), item,
                             offered, k, avoid, call));
  admit(out.attempts.back(), offered_set, avoided, want, out.words);

  if (out.words.size() < want) {
    std::vector<std::string> retry_avoid(avoid.begin(), avoid.end());
    retry_avoid.insert(retry_avoid.end(), out.words.begin(), out.words.end());
    std::vector<std::string> retry_pool;
    for (const auto& w : offered) {
      if (std::find(out.words.begin(), out.words.end(), w) == out.words.end()) retry_pool.push_back(w);
    }
    const int missing = static_cast<int>(want - out.words.size());
    out.attempts.push_back(ask(
        client, modelio::PromptRole::kSelectorRetry,
        modelio::render_selector_retry_prompt(prompts, item.stem, item.answer, retry_pool, missing, retry_avoid), item,
        retry_pool, missing, retry_avoid, call));
    const std::set<std::string> retry_avoided(retry_avoid.begin(), retry_avoid.end());
    const std::set<std::string> retry_offered(retry_pool.begin(), retry_pool.end());
    std::vector<std::string> extra;
    admit(out.attempts.back(), retry_offered, retry_avoided, static_cast<std::size_t>(missing), extra);
    out.words.insert(out.words.end(), extra.begin(), extra.end());
  }

  if (out.words.empty()) {
    throw Error(ErrorCode::kSelectionFailed, "item '" + item.id + "': selector named no word from the pool");
  }
  return out;
}

}  // namespace issr::pipeline
