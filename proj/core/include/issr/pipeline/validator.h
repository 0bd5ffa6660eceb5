#pragma once

#include <string_view>

#include "issr/core/types.h"
#include "issr/modelio/chat.h"
#include "issr/modelio/prompts.h"
#include "issr/pipeline/selector.h"

namespace issr::pipeline {

// Maps a validator reply to a verdict without calling a model.
Verdict interpret_verdict(ValidatorStrategy strategy, std::string_view reply, std::string_view target,
                          std::string_view distractor);

// Self-review of one distractor. Throws Error(kInvalidItem) if the
// distractor is the answer, and propagates transport failures.
Verdict validate(modelio::ChatClient& client, const modelio::PromptSet& prompts, const QuestionItem& item,
                 std::string_view distractor, ValidatorStrategy strategy, const ModelCall& call = {});

}  // namespace issr::pipeline
