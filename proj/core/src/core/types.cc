#include "issr/core/types.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "issr/core/blank.h"
#include "issr/core/error.h"

namespace issr {

namespace {

constexpr std::string_view kPosCodes[kPosCount] = {"n", "v", "adj", "adv", "prep", "conj", "pron", "art"};

constexpr double kSelectionRateSlack = 0.02;

[[noreturn]] void invalid(const std::string& id, const std::string& what) {
  throw Error(ErrorCode::kInvalidItem, "item '" + id + "': " + what);
}

}  // namespace

std::string_view pos_code(Pos pos) { return kPosCodes[static_cast<int>(pos)]; }

std::optional<Pos> parse_pos_code(std::string_view code) {
  const std::string lower = to_lower(trim(code));
  for (int i = 0; i < kPosCount; ++i) {
    if (lower == kPosCodes[i]) return static_cast<Pos>(i);
  }
  return std::nullopt;
}

std::vector<Pos> PosSet::members() const {
  std::vector<Pos> out;
  for (int i = 0; i < kPosCount; ++i) {
    if (contains(static_cast<Pos>(i))) out.push_back(static_cast<Pos>(i));
  }
  return out;
}

std::string PosSet::to_string() const {
  std::string out;
  for (Pos p : members()) {
    if (!out.empty()) out += ',';
    out += pos_code(p);
  }
  return out;
}

void QuestionItem::validate() const {
  if (id.empty()) invalid(id, "empty id");
  const auto first = stem.find(kBlankMarker);
  if (first == std::string::npos) invalid(id, "stem has no blank marker");
  if (stem.find(kBlankMarker, first + kBlankMarker.size()) != std::string::npos) {
    invalid(id, "stem has more than one blank marker");
  }
  if (!is_single_word(answer)) invalid(id, "answer must be a single word");
  std::set<std::string> seen;
  for (const auto& d : gold_distractors) {
    if (!is_single_word(d)) invalid(id, "distractor '" + d + "' is not a single word");
    if (to_lower(d) == to_lower(answer)) invalid(id, "answer listed as a distractor");
    if (!seen.insert(to_lower(d)).second) invalid(id, "duplicate distractor '" + d + "'");
  }
  if (!gold_distractors.empty() && gold_distractors.size() != 3) {
    invalid(id, "expected exactly 3 distractors, got " + std::to_string(gold_distractors.size()));
  }
  auto check_fraction = [&](double v, const std::string& what) {
    if (!std::isfinite(v) || v < 0.0 || v > 1.0) invalid(id, what + " outside [0,1]");
  };
  if (selection_rates) {
    double sum = 0.0;
    for (const auto& [word, rate] : *selection_rates) {
      check_fraction(rate, "selection rate of '" + word + "'");
      sum += rate;
    }
    if (sum > 1.0 + kSelectionRateSlack) invalid(id, "selection rates sum above 1");
  }
  if (pass_rate) check_fraction(*pass_rate, "pass_rate");
}

std::string_view to_string(ValidatorStrategy strategy) {
  switch (strategy) {
    case ValidatorStrategy::kS1Independent: return "S1_independent";
    case ValidatorStrategy::kS2Consistency: return "S2_consistency";
    case ValidatorStrategy::kS3Binary: return "S3_binary";
  }
  return "S3_binary";
}

std::optional<ValidatorStrategy> parse_strategy(std::string_view text) {
  const std::string lower = to_lower(trim(text));
  if (lower == "s1" || lower == "s1_independent") return ValidatorStrategy::kS1Independent;
  if (lower == "s2" || lower == "s2_consistency") return ValidatorStrategy::kS2Consistency;
  if (lower == "s3" || lower == "s3_binary") return ValidatorStrategy::kS3Binary;
  return std::nullopt;
}

namespace {
constexpr std::pair<VerdictReason, std::string_view> kReasonNames[] = {
    {VerdictReason::kChoseTarget, "ChoseTarget"},
    {VerdictReason::kChoseDistractor, "ChoseDistractor"},
    {VerdictReason::kBothGood, "BothGood"},
    {VerdictReason::kMeaningSame, "MeaningSame"},
    {VerdictReason::kMeaningDiffers, "MeaningDiffers"},
    {VerdictReason::kJudgedSuitable, "JudgedSuitable"},
    {VerdictReason::kJudgedUnsuitable, "JudgedUnsuitable"},
    {VerdictReason::kParseFailure, "ParseFailure"},
};
}  // namespace

std::string_view to_string(VerdictReason reason) {
  for (const auto& [r, name] : kReasonNames) {
    if (r == reason) return name;
  }
  return "ParseFailure";
}

std::optional<VerdictReason> parse_verdict_reason(std::string_view text) {
  for (const auto& [r, name] : kReasonNames) {
    if (name == text) return r;
  }
  return std::nullopt;
}

}  // namespace issr
