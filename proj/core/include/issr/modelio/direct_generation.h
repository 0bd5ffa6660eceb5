#pragma once

#include <string>
#include <vector>

#include "issr/modelio/chat.h"
#include "issr/modelio/prompts.h"

namespace issr::modelio {

struct DirectGenerationRequest {
  std::string item_id;
  std::string stem;
  std::string target;
  int count = 30;
  int rounds_of = 3;
  int max_rounds = 20;
  double temperature = 0.7;
  int max_tokens = 256;
  RetryPolicy retry;
};

struct DirectGenerationResult {
  // Distinct words in first-seen order, at most `count`.
  std::vector<std::string> words;
  int rounds_used = 0;
  std::vector<std::string> replies;
};

// Baseline: asks the chat model for `rounds_of` distractors per round with
// the accumulated avoid-list, until `count` distinct words or max_rounds.
DirectGenerationResult direct_generate(ChatClient& client, const PromptSet& prompts,
                                       const DirectGenerationRequest& request);

}  // namespace issr::modelio
