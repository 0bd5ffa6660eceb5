#pragma once

#include <span>
#include <string>
#include <vector>

#include "issr/core/config.h"
#include "issr/core/types.h"
#include "issr/modelio/chat.h"
#include "issr/modelio/prompts.h"

namespace issr::pipeline {

// Sampling and retry settings shared by every chat call of a run.
struct ModelCall {
  double temperature = 0.7;
  int max_tokens = 256;
  modelio::RetryPolicy retry;

  static ModelCall from_config(const PipelineConfig& config);
};

struct DroppedWord {
  std::string word;
  std::string reason;

  friend bool operator==(const DroppedWord&, const DroppedWord&) = default;
};

struct SelectionAttempt {
  modelio::PromptRole role = modelio::PromptRole::kSelector;
  std::string prompt;
  std::string reply;
  // Every word the parser read, before pool checks.
  std::vector<std::string> parsed;
  std::vector<DroppedWord> dropped;
};

struct SelectionOutcome {
  std::vector<std::string> words;
  // The first request, then the corrective retry when one was needed.
  std::vector<SelectionAttempt> attempts;
};

// Asks the selector for k words from `pool` (the words still on offer, in
// score order). Words outside the pool, avoided words and the target are
// dropped; if fewer than k remain, one corrective request asks for the rest.
// Throws Error(kSelectionFailed) when no in-pool word was obtained.
SelectionOutcome select_round(modelio::ChatClient& client, const modelio::PromptSet& prompts,
                              const QuestionItem& item, std::span<const std::string> pool, int k,
                              std::span<const std::string> avoid, const ModelCall& call = {});

}  // namespace issr::pipeline
