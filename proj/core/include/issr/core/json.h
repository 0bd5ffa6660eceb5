#pragma once

#include <nlohmann/json.hpp>

#include "issr/core/config.h"
#include "issr/core/types.h"

namespace issr {

void to_json(nlohmann::json& j, const QuestionItem& item);
// Normalizes the stem, lowercases words, and validates the result.
void from_json(const nlohmann::json& j, QuestionItem& item);

void to_json(nlohmann::json& j, const Candidate& candidate);
void from_json(const nlohmann::json& j, Candidate& candidate);

void to_json(nlohmann::json& j, const Verdict& verdict);
void from_json(const nlohmann::json& j, Verdict& verdict);

void to_json(nlohmann::json& j, const PipelineConfig& config);
void from_json(const nlohmann::json& j, PipelineConfig& config);

}  // namespace issr
