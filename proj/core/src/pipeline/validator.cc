#include "issr/pipeline/validator.h"

#include "issr/core/blank.h"
#include "issr/core/error.h"
#include "issr/modelio/parse.h"

namespace issr::pipeline {

Verdict interpret_verdict(ValidatorStrategy strategy, std::string_view reply, std::string_view target,
                          std::string_view distractor) {
  VerdictReason reason = VerdictReason::kParseFailure;
  switch (strategy) {
    case ValidatorStrategy::kS1Independent:
      if (auto yes = modelio::parse_yes_no(reply)) {
        reason = *yes ? VerdictReason::kJudgedSuitable : VerdictReason::kJudgedUnsuitable;
      }
      break;
    case ValidatorStrategy::kS2Consistency:
      if (auto yes = modelio::parse_yes_no(reply)) {
        reason = *yes ? VerdictReason::kMeaningSame : VerdictReason::kMeaningDiffers;
      }
      break;
    case ValidatorStrategy::kS3Binary:
      reason = modelio::parse_binary_verdict(reply, target, distractor);
      break;
  }
  return Verdict::make(std::string(distractor), strategy, reason, std::string(reply));
}

Verdict validate(modelio::ChatClient& client, const modelio::PromptSet& prompts, const QuestionItem& item,
                 std::string_view distractor, ValidatorStrategy strategy, const ModelCall& call) {
  if (to_lower(distractor) == to_lower(item.answer)) {
    throw Error(ErrorCode::kInvalidItem, "distractor equals the answer '" + item.answer + "'");
  }
  modelio::ChatRequest request;
  request.prompt = modelio::render_validator_prompt(prompts, strategy, item.stem, item.answer, distractor);
  request.temperature = call.temperature;
  request.max_tokens = call.max_tokens;
  switch (strategy) {
    case ValidatorStrategy::kS1Independent:
      request.intent.role = modelio::PromptRole::kValidateS1;
      break;
    case ValidatorStrategy::kS2Consistency:
      request.intent.role = modelio::PromptRole::kValidateS2;
      break;
    case ValidatorStrategy::kS3Binary:
      request.intent.role = modelio::PromptRole::kValidateS3;
      break;
  }
  request.intent.item_id = item.id;
  request.intent.target = item.answer;
  request.intent.distractor = std::string(distractor);
  const std::string reply = modelio::chat(client, request, call.retry);
  return interpret_verdict(strategy, reply, item.answer, distractor);
}

}  // namespace issr::pipeline
