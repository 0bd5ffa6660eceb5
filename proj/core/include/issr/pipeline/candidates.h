#pragma once

#include <functional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "issr/core/config.h"
#include "issr/core/types.h"
#include "issr/lexicon/lexicon.h"
#include "issr/modelio/chat.h"
#include "issr/modelio/masked.h"

namespace issr::pipeline {

// Contextual part-of-speech hook: the tags `word` takes when it fills the
// blank of `filled_stem`. An empty set falls back to the lexicon.
using PosTagger = std::function<PosSet(std::string_view filled_stem, std::string_view word)>;

struct RejectedCandidate {
  std::string word;
  std::string reason;

  friend bool operator==(const RejectedCandidate&, const RejectedCandidate&) = default;
};

struct FilterResult {
  std::vector<Candidate> kept;
  std::vector<RejectedCandidate> rejected;
};

/// Score-ordered candidates still on offer plus every word already taken
/// out of play. A consumed word never returns to `items`.
struct CandidatePool {
  std::vector<Candidate> items;
  std::set<std::string> consumed;
  // Why raw predictions were dropped before the pool was formed.
  std::vector<RejectedCandidate> filtered_out;
  std::size_t fetched = 0;

  std::vector<std::string> words() const;
  bool contains(std::string_view word) const;
  // Moves `word` from items to consumed (a no-op for unknown words).
  void consume(const std::string& word);
  bool exhausted() const { return items.empty(); }
};

// Reason strings used in FilterResult::rejected.
namespace reject_reason {
inline constexpr std::string_view kNotSingleWord = "not_single_word";
inline constexpr std::string_view kDuplicate = "duplicate";
inline constexpr std::string_view kSameAsAnswer = "same_as_answer";
inline constexpr std::string_view kOutOfVocabulary = "out_of_vocabulary";
inline constexpr std::string_view kLength = "length";
inline constexpr std::string_view kPartOfSpeech = "part_of_speech";
inline constexpr std::string_view kDifficulty = "difficulty";
}  // namespace reject_reason

// Keeps a candidate iff it is a single word, differs from the answer after
// lemmatization, is graded, is within length_delta_max characters of the
// answer, shares a part of speech with it, and is within
// difficulty_delta_max levels. Input order is preserved among kept words.
// Throws Error(kUngradedAnswer) when the answer is not in the lexicon.
FilterResult filter_candidates(const std::vector<modelio::MaskedPrediction>& candidates, std::string_view answer,
                               std::string_view stem, const lexicon::Lexicon& lexicon, const PipelineConfig& config,
                               const PosTagger& tagger = {});

// Masks the blank, fetches config.fetch_size() predictions, filters them and
// keeps the pool_cap best by score (ties by word). Throws
// Error(kInsufficientCandidates) when fewer than k_per_round survive.
CandidatePool generate_candidates(const QuestionItem& item, modelio::MaskedSource& source,
                                  const lexicon::Lexicon& lexicon, const PipelineConfig& config,
                                  const PosTagger& tagger = {});

// Calls the masked source, retrying retryable transport errors.
std::vector<modelio::MaskedPrediction> fetch_predictions(modelio::MaskedSource& source, std::string_view masked_text,
                                                         int top_n, const modelio::RetryPolicy& retry);

}  // namespace issr::pipeline
