#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "issr/core/config.h"
#include "issr/core/types.h"
#include "issr/lexicon/lexicon.h"
#include "issr/modelio/chat.h"
#include "issr/modelio/masked.h"
#include "issr/modelio/prompts.h"

namespace issr::eval {

struct PlantedItemResult {
  std::vector<std::string> pool;
  std::vector<std::string> selected;
  double f1_at_3 = 0.0;
  double ndcg_at_3 = 0.0;
  bool selection_failed = false;
};

struct PlantedGoldReport {
  std::map<std::string, PlantedItemResult> per_item;
  double f1_at_3 = 0.0;
  double ndcg_at_3 = 0.0;
  int items = 0;
};

// For every item with three gold distractors: takes the best n_fill - 3
// filtered generator candidates that are not gold, plants the gold words at
// seeded positions, asks the selector for 3 and scores the reply. A round
// that selects nothing scores zero.
PlantedGoldReport planted_gold_eval(modelio::ChatClient& client, const modelio::PromptSet& prompts,
                                    const std::vector<QuestionItem>& items, modelio::MaskedSource& generator,
                                    const lexicon::Lexicon& lexicon, const PipelineConfig& config, int n_fill);

struct InPoolRate {
  int trials = 0;
  int successes = 0;
  double rate = 0.0;
};

// For each size: offers gold plus seeded fillers (size words in total) and
// asks for 3 words once, without the corrective retry. A reply succeeds when
// it names at least one word and every named word is in the offered pool.
std::map<int, InPoolRate> in_pool_rate(modelio::ChatClient& client, const modelio::PromptSet& prompts,
                                       const std::vector<QuestionItem>& items, const std::vector<int>& pool_sizes,
                                       const std::vector<std::string>& filler_vocabulary,
                                       const PipelineConfig& config);

struct AnswerAccuracy {
  int total = 0;
  int correct = 0;
  int unparsed = 0;
  double accuracy = 0.0;
};

// Poses each item with its answer and three gold distractors in a seeded
// order and checks the option the reply names.
AnswerAccuracy answer_accuracy(modelio::ChatClient& client, const modelio::PromptSet& prompts,
                               const std::vector<QuestionItem>& items, const PipelineConfig& config);

// The four options of an item in the seeded order answer_accuracy uses.
std::vector<std::string> shuffled_options(const QuestionItem& item, std::uint64_t seed);

}  // namespace issr::eval
