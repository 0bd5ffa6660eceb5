#pragma once

#include <cstdint>
#include <deque>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "issr/lexicon/lexicon.h"
#include "issr/modelio/chat.h"
#include "issr/modelio/masked.h"

namespace issr::modelio {

/// Returns queued replies in order. An entry may also be a scripted
/// transport failure. Thread-safe; an exhausted queue is a
/// non-retryable transport error.
class ScriptedChatClient : public ChatClient {
 public:
  struct Step {
    std::string reply;
    // Nonzero: fail this attempt as if the server answered with this status.
    int fail_status = 0;
  };

  ScriptedChatClient() = default;
  explicit ScriptedChatClient(std::vector<std::string> replies);

  void push(std::string reply);
  void push_failure(int http_status);

  std::string complete(const ChatRequest& request) override;

  std::vector<ChatRequest> requests() const;
  std::size_t remaining() const;

 private:
  mutable std::mutex mu_;
  std::deque<Step> queue_;
  std::vector<ChatRequest> seen_;
};

enum class SelectorPolicy { kHead, kTail, kSeeded, kGold, kNonGoldTail };
enum class ValidatorPolicy { kAcceptAll, kRejectAll, kRejectEvery };
enum class RejectStyle { kChooseDistractor, kBothGood };
enum class AnswerPolicy { kCorrect, kRandom, kFirst };

struct MockBehavior {
  SelectorPolicy selector = SelectorPolicy::kHead;
  // Offered pools at least this large get one out-of-pool word (0 = never).
  int hallucinate_at_pool_size = 0;
  // Every n-th selector call per item gets one out-of-pool word (0 = never).
  int hallucinate_every = 0;

  ValidatorPolicy validator = ValidatorPolicy::kAcceptAll;
  int reject_every = 3;
  RejectStyle reject_style = RejectStyle::kChooseDistractor;

  // Direct generation: replies served in order per item; after the last one
  // the final reply repeats. When empty, fresh words are drawn from
  // `generator_words` (never repeating an avoided word).
  std::vector<std::string> generator_replies;
  std::vector<std::string> generator_words;

  AnswerPolicy answer = AnswerPolicy::kCorrect;
};

/// Deterministic model stand-in that answers from the request intent.
/// Counters and random streams are kept per item id, so results do not
/// depend on how items are scheduled across threads.
class RuleChatMock : public ChatClient {
 public:
  explicit RuleChatMock(MockBehavior behavior = {}, std::uint64_t seed = 0);

  void set_item_behavior(const std::string& item_id, MockBehavior behavior);
  void set_gold(const std::string& item_id, std::vector<std::string> gold);

  std::string complete(const ChatRequest& request) override;

  std::size_t calls() const;

 private:
  struct ItemState {
    std::uint64_t rng = 0;
    int selector_calls = 0;
    int validator_calls = 0;
    int generator_calls = 0;
  };

  const MockBehavior& behavior_for(const std::string& item_id) const;
  ItemState& state_for(const std::string& item_id);

  std::string select(const RequestIntent& intent, const MockBehavior& b, ItemState& s);
  std::string validate(const RequestIntent& intent, const MockBehavior& b, ItemState& s);
  std::string generate(const RequestIntent& intent, const MockBehavior& b, ItemState& s);
  std::string answer(const RequestIntent& intent, const MockBehavior& b, ItemState& s);

  MockBehavior default_;
  std::map<std::string, MockBehavior> per_item_;
  std::map<std::string, std::vector<std::string>> gold_;
  std::uint64_t seed_;

  mutable std::mutex mu_;
  std::map<std::string, ItemState> states_;
  std::size_t calls_ = 0;
};

/// Masked-LM stand-in over a lexicon: every lexicon lemma is a prediction
/// with a pseudo-random score derived from (seed, text, lemma).
class LexiconMaskedSource : public MaskedSource {
 public:
  LexiconMaskedSource(const lexicon::Lexicon& lexicon, std::uint64_t seed);

  std::vector<MaskedPrediction> predict(std::string_view masked_text, int top_n) override;

 private:
  std::vector<std::string> words_;
  std::uint64_t seed_;
};

// Parses a mock script (see README "Mock scripts"). Either
// {"replies": [...]} for a ScriptedChatClient, or rule behavior with
// optional per-item overrides under "items". A script without its own
// "seed" uses `default_seed`.
std::unique_ptr<ChatClient> chat_client_from_mock_script(const nlohmann::json& script, std::uint64_t default_seed = 0);
MockBehavior parse_mock_behavior(const nlohmann::json& j, MockBehavior base = {});

}  // namespace issr::modelio
