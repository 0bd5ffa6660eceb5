#include "issr/pipeline/candidates.h"

#include <algorithm>
#include <cstdlib>
#include <thread>

#include "issr/core/blank.h"
#include "issr/core/error.h"

namespace issr::pipeline {

std::vector<std::string> CandidatePool::words() const {
  std::vector<std::string> out;
  out.reserve(items.size());
  for (const auto& c : items) out.push_back(c.surface);
  return out;
}

bool CandidatePool::contains(std::string_view word) const {
  return std::any_of(items.begin(), items.end(), [&](const Candidate& c) { return c.surface == word; });
}

void CandidatePool::consume(const std::string& word) {
  auto it = std::find_if(items.begin(), items.end(), [&](const Candidate& c) { return c.surface == word; });
  if (it == items.end()) return;
  items.erase(it);
  consumed.insert(word);
}

FilterResult filter_candidates(const std::vector<modelio::MaskedPrediction>& candidates, std::string_view answer,
                               std::string_view stem, const lexicon::Lexicon& lexicon, const PipelineConfig& config,
                               const PosTagger& tagger) {
  const std::string answer_word = to_lower(trim(answer));
  const auto answer_info = lexicon.lookup(answer_word);
  if (!answer_info) throw Error(ErrorCode::kUngradedAnswer, "answer '" + answer_word + "' is not in the wordlist");
  const std::string answer_lemma = lexicon.lemmatize(answer_word);

  auto tags_for = [&](const std::string& word, PosSet fallback) {
    if (!tagger) return fallback;
    PosSet tagged = tagger(fill_blank(stem, word), word);
    return tagged.empty() ? fallback : tagged;
  };
  const PosSet answer_pos = tags_for(answer_word, answer_info->pos);
  const auto answer_len = static_cast<long>(answer_word.size());

  FilterResult out;
  std::set<std::string> seen;
  for (const auto& prediction : candidates) {
    const std::string word = to_lower(trim(prediction.token));
    auto reject = [&](std::string_view reason) {
      out.rejected.push_back(RejectedCandidate{word.empty() ? prediction.token : word, std::string(reason)});
    };
    if (!is_single_word(word)) {
      reject(reject_reason::kNotSingleWord);
      continue;
    }
    if (!seen.insert(word).second) {
      reject(reject_reason::kDuplicate);
      continue;
    }
    const std::string lemma = lexicon.lemmatize(word);
    if (word == answer_word || lemma == answer_lemma) {
      reject(reject_reason::kSameAsAnswer);
      continue;
    }
    const auto info = lexicon.lookup(word);
    if (!info) {
      reject(reject_reason::kOutOfVocabulary);
      continue;
    }
    if (std::labs(static_cast<long>(word.size()) - answer_len) > config.length_delta_max) {
      reject(reject_reason::kLength);
      continue;
    }
    const PosSet pos = tags_for(word, info->pos);
    if (!pos.intersects(answer_pos)) {
      reject(reject_reason::kPartOfSpeech);
      continue;
    }
    if (std::abs(info->level - answer_info->level) > config.difficulty_delta_max) {
      reject(reject_reason::kDifficulty);
      continue;
    }
    out.kept.push_back(Candidate{word, info->lemma, prediction.score, info->level, pos});
  }
  return out;
}

std::vector<modelio::MaskedPrediction> fetch_predictions(modelio::MaskedSource& source, std::string_view masked_text,
                                                         int top_n, const modelio::RetryPolicy& retry) {
  for (int attempt = 0;; ++attempt) {
    try {
      return modelio::masked_candidates(source, masked_text, top_n);
    } catch (const modelio::TransportError& e) {
      if (!e.retryable()) throw;
      if (attempt >= retry.retry_limit) {
        throw Error(ErrorCode::kRetriesExhausted, std::string("candidate generator failed: ") + e.what());
      }
      if (retry.backoff.count() > 0) std::this_thread::sleep_for(retry.backoff * (attempt + 1));
    }
  }
}

CandidatePool generate_candidates(const QuestionItem& item, modelio::MaskedSource& source,
                                  const lexicon::Lexicon& lexicon, const PipelineConfig& config,
                                  const PosTagger& tagger) {
  const std::string stem = normalize_blank(item.stem);
  const std::string masked = fill_blank(stem, modelio::kMaskToken);
  const modelio::RetryPolicy retry{config.retry_limit, std::chrono::milliseconds(config.retry_backoff_ms)};
  const auto predictions = fetch_predictions(source, masked, config.fetch_size(), retry);

  FilterResult filtered = filter_candidates(predictions, item.answer, stem, lexicon, config, tagger);
  std::stable_sort(filtered.kept.begin(), filtered.kept.end(), [](const Candidate& a, const Candidate& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.surface < b.surface;
  });
  if (filtered.kept.size() > static_cast<std::size_t>(config.pool_cap)) {
    filtered.kept.resize(static_cast<std::size_t>(config.pool_cap));
  }
  if (filtered.kept.size() < static_cast<std::size_t>(config.k_per_round)) {
    throw Error(ErrorCode::kInsufficientCandidates,
                "item '" + item.id + "': " + std::to_string(filtered.kept.size()) + " of " +
                    std::to_string(predictions.size()) + " predictions survived filtering, need " +
                    std::to_string(config.k_per_round));
  }

  CandidatePool pool;
  pool.items = std::move(filtered.kept);
  pool.filtered_out = std::move(filtered.rejected);
  pool.fetched = predictions.size();
  return pool;
}

}  // namespace issr::pipeline
