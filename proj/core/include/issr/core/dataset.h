#pragma once

#include <filesystem>
#include <istream>
#include <string>
#include <vector>

#include "issr/core/types.h"

namespace issr {

// JSON Lines question dataset: one object per line with keys id, stem,
// answer, distractors, and optional selection_rates / pass_rate.
// Blank lines are skipped. Throws Error(kParse) naming the line on failure.
std::vector<QuestionItem> read_dataset(std::istream& in);
std::vector<QuestionItem> read_dataset(const std::filesystem::path& path);

// Single compact JSON line without the trailing newline.
std::string serialize_item(const QuestionItem& item);
QuestionItem parse_item(std::string_view line);

}  // namespace issr
