#include "issr/eval/experiments.h"

#include <algorithm>
#include <set>

#include "issr/core/blank.h"
#include "issr/core/error.h"
#include "issr/core/hash.h"
#include "issr/eval/metrics.h"
#include "issr/modelio/parse.h"
#include "issr/pipeline/candidates.h"
#include "issr/pipeline/selector.h"

namespace issr::eval {

namespace {

std::uint64_t item_stream(std::uint64_t seed, const std::string& id, std::uint64_t salt) {
  return seed ^ fnv1a64(id) ^ (salt * 0x9E3779B97F4A7C15ULL);
}

std::size_t below(std::uint64_t& state, std::size_t bound) {
  return static_cast<std::size_t>(splitmix64(state) % bound);
}

template <typename T>
void shuffle_in_place(std::vector<T>& v, std::uint64_t& state) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(state, i)]);
}

bool has_full_gold(const QuestionItem& item) { return item.gold_distractors.size() == 3; }

}  // namespace

PlantedGoldReport planted_gold_eval(modelio::ChatClient& client, const modelio::PromptSet& prompts,
                                    const std::vector<QuestionItem>& items, modelio::MaskedSource& generator,
                                    const lexicon::Lexicon& lexicon, const PipelineConfig& config, int n_fill) {
  if (n_fill < 3) throw Error(ErrorCode::kInvalidConfig, "planted pools need room for the 3 gold words");
  const auto call = pipeline::ModelCall::from_config(config);
  PlantedGoldReport report;
  double f1_sum = 0.0;
  double ndcg_sum = 0.0;

  for (const auto& item : items) {
    if (!has_full_gold(item)) continue;
    const std::string stem = normalize_blank(item.stem);
    const auto predictions = pipeline::fetch_predictions(generator, fill_blank(stem, modelio::kMaskToken),
                                                         config.fetch_size(), call.retry);
    auto filtered = pipeline::filter_candidates(predictions, item.answer, stem, lexicon, config);
    const std::set<std::string> gold(item.gold_distractors.begin(), item.gold_distractors.end());
    std::vector<std::string> fillers;
    for (const auto& c : filtered.kept) {
      if (static_cast<int>(fillers.size()) == n_fill - 3) break;
      if (!gold.contains(c.surface)) fillers.push_back(c.surface);
    }
    if (static_cast<int>(fillers.size()) < n_fill - 3) {
      throw Error(ErrorCode::kInsufficientCandidates, "item '" + item.id + "': only " +
                                                          std::to_string(fillers.size()) + " filler candidates");
    }

    std::uint64_t state = item_stream(config.seed, item.id, 1);
    std::vector<std::size_t> slots(static_cast<std::size_t>(n_fill));
    for (std::size_t i = 0; i < slots.size(); ++i) slots[i] = i;
    for (std::size_t i = 0; i < 3; ++i) std::swap(slots[i], slots[i + below(state, slots.size() - i)]);
    std::vector<std::size_t> planted(slots.begin(), slots.begin() + 3);
    std::sort(planted.begin(), planted.end());

    PlantedItemResult r;
    std::size_t next_filler = 0;
    std::size_t next_gold = 0;
    for (std::size_t i = 0; i < static_cast<std::size_t>(n_fill); ++i) {
      const bool is_planted = next_gold < 3 && planted[next_gold] == i;
      r.pool.push_back(is_planted ? item.gold_distractors[next_gold++] : fillers[next_filler++]);
    }

    try {
      r.selected = pipeline::select_round(client, prompts, item, r.pool, 3, {}, call).words;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kSelectionFailed) throw;
      r.selection_failed = true;
    }
    r.f1_at_3 = f1_at_k(r.selected, item.gold_distractors, 3);
    r.ndcg_at_3 = ndcg_at_k(r.selected, item.gold_distractors, 3);
    f1_sum += r.f1_at_3;
    ndcg_sum += r.ndcg_at_3;
    report.per_item[item.id] = std::move(r);
  }
  report.items = static_cast<int>(report.per_item.size());
  if (report.items > 0) {
    report.f1_at_3 = f1_sum / report.items;
    report.ndcg_at_3 = ndcg_sum / report.items;
  }
  return report;
}

std::map<int, InPoolRate> in_pool_rate(modelio::ChatClient& client, const modelio::PromptSet& prompts,
                                       const std::vector<QuestionItem>& items, const std::vector<int>& pool_sizes,
                                       const std::vector<std::string>& filler_vocabulary,
                                       const PipelineConfig& config) {
  const auto call = pipeline::ModelCall::from_config(config);
  std::map<int, InPoolRate> out;
  for (int size : pool_sizes) {
    auto& stats = out[size];
    for (const auto& item : items) {
      const std::set<std::string> exclude = [&] {
        std::set<std::string> s(item.gold_distractors.begin(), item.gold_distractors.end());
        s.insert(item.answer);
        return s;
      }();
      std::vector<std::string> candidates;
      for (const auto& w : filler_vocabulary) {
        if (!exclude.contains(w)) candidates.push_back(w);
      }
      std::sort(candidates.begin(), candidates.end());
      candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

      const auto gold_count = static_cast<int>(item.gold_distractors.size());
      const int filler_count = size - gold_count;
      if (size < 3 || filler_count < 0) {
        throw Error(ErrorCode::kInvalidConfig, "pool size " + std::to_string(size) + " is too small");
      }
      if (static_cast<std::size_t>(filler_count) > candidates.size()) {
        throw Error(ErrorCode::kInsufficientCandidates,
                    "filler vocabulary has " + std::to_string(candidates.size()) + " words, pool size " +
                        std::to_string(size) + " needs " + std::to_string(filler_count));
      }

      std::uint64_t state = item_stream(config.seed, item.id, static_cast<std::uint64_t>(size) + 2);
      std::vector<std::string> pool(item.gold_distractors.begin(), item.gold_distractors.end());
      for (int i = 0; i < filler_count; ++i) {
        const std::size_t j = static_cast<std::size_t>(i) + below(state, candidates.size() - static_cast<std::size_t>(i));
        std::swap(candidates[static_cast<std::size_t>(i)], candidates[j]);
        pool.push_back(candidates[static_cast<std::size_t>(i)]);
      }
      shuffle_in_place(pool, state);

      modelio::ChatRequest request;
      request.prompt = modelio::render_selector_prompt(prompts, normalize_blank(item.stem), item.answer, pool, 3);
      request.temperature = call.temperature;
      request.max_tokens = call.max_tokens;
      request.intent = modelio::RequestIntent{modelio::PromptRole::kSelector, item.id, item.answer, {}, pool, {}, 3};
      const std::string reply = modelio::chat(client, request, call.retry);

      bool ok = false;
      try {
        const auto parsed = modelio::parse_enumerated(reply, -1, item.answer);
        const std::set<std::string> offered(pool.begin(), pool.end());
        ok = std::all_of(parsed.words.begin(), parsed.words.end(),
                         [&](const std::string& w) { return offered.contains(w); });
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kNoParsableLines) throw;
      }
      ++stats.trials;
      if (ok) ++stats.successes;
    }
    stats.rate = stats.trials > 0 ? static_cast<double>(stats.successes) / stats.trials : 0.0;
  }
  return out;
}

std::vector<std::string> shuffled_options(const QuestionItem& item, std::uint64_t seed) {
  std::vector<std::string> options{item.answer};
  options.insert(options.end(), item.gold_distractors.begin(), item.gold_distractors.end());
  std::uint64_t state = item_stream(seed, item.id, 0);
  shuffle_in_place(options, state);
  return options;
}

AnswerAccuracy answer_accuracy(modelio::ChatClient& client, const modelio::PromptSet& prompts,
                               const std::vector<QuestionItem>& items, const PipelineConfig& config) {
  const auto call = pipeline::ModelCall::from_config(config);
  AnswerAccuracy out;
  for (const auto& item : items) {
    if (!has_full_gold(item)) continue;
    const auto options = shuffled_options(item, config.seed);
    modelio::ChatRequest request;
    request.prompt = modelio::render_answer_prompt(prompts, normalize_blank(item.stem), options);
    request.temperature = call.temperature;
    request.max_tokens = call.max_tokens;
    request.intent = modelio::RequestIntent{modelio::PromptRole::kAnswer, item.id, item.answer, {}, options, {}, 1};
    const std::string reply = modelio::chat(client, request, call.retry);
    ++out.total;
    const auto choice = modelio::parse_choice(reply, options);
    if (!choice) {
      ++out.unparsed;
    } else if (options[*choice] == item.answer) {
      ++out.correct;
    }
  }
  out.accuracy = out.total > 0 ? static_cast<double>(out.correct) / out.total : 0.0;
  return out;
}

}  // namespace issr::eval
