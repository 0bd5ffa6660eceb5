#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "issr/core/types.h"
#include "issr/embeddings/vector_table.h"
#include "issr/eval/stats.h"
#include "issr/lexicon/lexicon.h"

namespace issr::eval {

inline constexpr double kLowPassRate = 0.60;

struct AnalysisReport {
  std::size_t items = 0;
  std::size_t ungraded_answers = 0;
  std::size_t ungraded_distractors = 0;

  // Answer level -> item count.
  std::map<int, std::size_t> answer_levels;
  // |level(distractor) - level(answer)| -> distractor count.
  std::map<int, std::size_t> level_differences;
  // Answer level -> |difference| -> distractor count.
  std::map<int, std::map<int, std::size_t>> level_differences_by_answer;

  // Answer-distractor cosine over every pair with both vectors present.
  std::optional<Summary> cosine_all;
  // The same for items whose pass rate is below kLowPassRate.
  std::optional<Summary> cosine_low_pass;
  std::size_t pairs_without_vectors = 0;

  // Pass rate against answer level.
  std::optional<PearsonResult> pass_rate_vs_level;
};

// `vectors` may be null, in which case cosine statistics are omitted.
AnalysisReport analyze_corpus(const std::vector<QuestionItem>& items, const lexicon::Lexicon& lexicon,
                              const embeddings::VectorTable* vectors);

nlohmann::json to_json(const AnalysisReport& report);
// Long-form histogram rows: histogram,answer_level,bucket,count.
std::string histograms_csv(const AnalysisReport& report);

}  // namespace issr::eval
