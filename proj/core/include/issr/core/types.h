#pragma once

#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace issr {

enum class Pos : std::uint8_t { kNoun, kVerb, kAdj, kAdv, kPrep, kConj, kPron, kArt };

inline constexpr int kPosCount = 8;

// Wordlist POS codes: n, v, adj, adv, prep, conj, pron, art.
std::string_view pos_code(Pos pos);
std::optional<Pos> parse_pos_code(std::string_view code);

// Small value set of parts of speech.
class PosSet {
 public:
  constexpr PosSet() = default;
  constexpr PosSet(std::initializer_list<Pos> list) {
    for (Pos p : list) insert(p);
  }

  constexpr void insert(Pos p) { bits_ |= bit(p); }
  constexpr bool contains(Pos p) const { return (bits_ & bit(p)) != 0; }
  constexpr bool intersects(PosSet other) const { return (bits_ & other.bits_) != 0; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr void merge(PosSet other) { bits_ |= other.bits_; }
  constexpr std::uint8_t bits() const { return bits_; }

  std::vector<Pos> members() const;
  // Comma-joined codes in enum order ("n,v").
  std::string to_string() const;

  friend constexpr bool operator==(PosSet, PosSet) = default;

 private:
  static constexpr std::uint8_t bit(Pos p) { return static_cast<std::uint8_t>(1u << static_cast<int>(p)); }
  std::uint8_t bits_ = 0;
};

inline constexpr int kMinLevel = 1;
inline constexpr int kMaxLevel = 6;

// Difficulty level 1-6; std::nullopt means the word is not graded.
using Level = std::optional<int>;

/// One exam item: a stem with a single blank, the answer that fills it, and
/// the teacher-designed distractors (empty for authoring-only items).
struct QuestionItem {
  std::string id;
  std::string stem;
  std::string answer;
  std::vector<std::string> gold_distractors;
  std::optional<std::map<std::string, double>> selection_rates;
  std::optional<double> pass_rate;

  // Throws Error(kInvalidItem) when an invariant is broken. Expects a stem
  // that already went through normalize_blank.
  void validate() const;

  friend bool operator==(const QuestionItem&, const QuestionItem&) = default;
};

enum class ValidatorStrategy { kS1Independent, kS2Consistency, kS3Binary };

std::string_view to_string(ValidatorStrategy strategy);
// Accepts "s1"/"s2"/"s3" and the long names, case-insensitive.
std::optional<ValidatorStrategy> parse_strategy(std::string_view text);

struct Candidate {
  std::string surface;
  std::string lemma;
  double score = 0.0;
  Level level;
  PosSet pos;

  friend bool operator==(const Candidate&, const Candidate&) = default;
};

enum class VerdictReason {
  kChoseTarget,
  kChoseDistractor,
  kBothGood,
  kMeaningSame,
  kMeaningDiffers,
  kJudgedSuitable,
  kJudgedUnsuitable,
  kParseFailure,
};

std::string_view to_string(VerdictReason reason);
std::optional<VerdictReason> parse_verdict_reason(std::string_view text);

// Only ChoseTarget, MeaningDiffers and JudgedSuitable make a distractor valid.
constexpr bool is_valid_reason(VerdictReason reason) {
  return reason == VerdictReason::kChoseTarget || reason == VerdictReason::kMeaningDiffers ||
         reason == VerdictReason::kJudgedSuitable;
}

struct Verdict {
  std::string distractor;
  ValidatorStrategy strategy = ValidatorStrategy::kS3Binary;
  bool valid = false;
  std::string raw_reply;
  VerdictReason reason = VerdictReason::kParseFailure;

  static Verdict make(std::string distractor, ValidatorStrategy strategy, VerdictReason reason,
                      std::string raw_reply) {
    return Verdict{std::move(distractor), strategy, is_valid_reason(reason),
                   std::move(raw_reply), reason};
  }

  friend bool operator==(const Verdict&, const Verdict&) = default;
};

}  // namespace issr
