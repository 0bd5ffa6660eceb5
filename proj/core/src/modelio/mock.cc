#include "issr/modelio/mock.h"

#include <algorithm>
#include <set>

#include <nlohmann/json.hpp>

#include "issr/core/blank.h"
#include "issr/core/error.h"
#include "issr/core/hash.h"

namespace issr::modelio {

namespace {

std::string enumerate(const std::vector<std::string>& words) {
  std::string out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i > 0) out += '\n';
    out += std::to_string(i + 1) + ". " + words[i];
  }
  return out;
}

std::string fabricated_word(const std::vector<std::string>& offered, int salt) {
  std::string word = "phantom";
  int n = salt;
  do {
    word += static_cast<char>('a' + n % 26);
    n /= 26;
  } while (n > 0);
  while (std::find(offered.begin(), offered.end(), word) != offered.end()) word += 'x';
  return word;
}

template <typename Enum>
Enum parse_enum(const nlohmann::json& j, const char* key, std::initializer_list<std::pair<const char*, Enum>> table,
                Enum fallback) {
  if (!j.contains(key)) return fallback;
  const std::string value = to_lower(j.at(key).get<std::string>());
  for (const auto& [name, e] : table) {
    if (value == name) return e;
  }
  throw Error(ErrorCode::kInvalidConfig, std::string("mock script: unknown ") + key + " '" + value + "'");
}

}  // namespace

ScriptedChatClient::ScriptedChatClient(std::vector<std::string> replies) {
  for (auto& r : replies) queue_.push_back(Step{std::move(r), 0});
}

void ScriptedChatClient::push(std::string reply) {
  std::lock_guard lock(mu_);
  queue_.push_back(Step{std::move(reply), 0});
}

void ScriptedChatClient::push_failure(int http_status) {
  std::lock_guard lock(mu_);
  queue_.push_back(Step{{}, http_status});
}

std::string ScriptedChatClient::complete(const ChatRequest& request) {
  std::lock_guard lock(mu_);
  seen_.push_back(request);
  if (queue_.empty()) throw TransportError("scripted mock has no replies left", false);
  Step step = std::move(queue_.front());
  queue_.pop_front();
  if (step.fail_status != 0) {
    const bool retryable = step.fail_status == 429 || step.fail_status >= 500;
    throw TransportError("scripted HTTP " + std::to_string(step.fail_status), retryable, step.fail_status);
  }
  return step.reply;
}

std::vector<ChatRequest> ScriptedChatClient::requests() const {
  std::lock_guard lock(mu_);
  return seen_;
}

std::size_t ScriptedChatClient::remaining() const {
  std::lock_guard lock(mu_);
  return queue_.size();
}

RuleChatMock::RuleChatMock(MockBehavior behavior, std::uint64_t seed) : default_(std::move(behavior)), seed_(seed) {}

void RuleChatMock::set_item_behavior(const std::string& item_id, MockBehavior behavior) {
  std::lock_guard lock(mu_);
  per_item_[item_id] = std::move(behavior);
}

void RuleChatMock::set_gold(const std::string& item_id, std::vector<std::string> gold) {
  std::lock_guard lock(mu_);
  gold_[item_id] = std::move(gold);
}

std::size_t RuleChatMock::calls() const {
  std::lock_guard lock(mu_);
  return calls_;
}

const MockBehavior& RuleChatMock::behavior_for(const std::string& item_id) const {
  auto it = per_item_.find(item_id);
  return it == per_item_.end() ? default_ : it->second;
}

RuleChatMock::ItemState& RuleChatMock::state_for(const std::string& item_id) {
  auto [it, inserted] = states_.try_emplace(item_id);
  if (inserted) it->second.rng = seed_ ^ fnv1a64(item_id);
  return it->second;
}

std::string RuleChatMock::complete(const ChatRequest& request) {
  std::lock_guard lock(mu_);
  ++calls_;
  const auto& intent = request.intent;
  const MockBehavior& b = behavior_for(intent.item_id);
  ItemState& s = state_for(intent.item_id);
  switch (intent.role) {
    case PromptRole::kSelector:
    case PromptRole::kSelectorRetry:
      return select(intent, b, s);
    case PromptRole::kValidateS1:
    case PromptRole::kValidateS2:
    case PromptRole::kValidateS3:
      return validate(intent, b, s);
    case PromptRole::kDirectGeneration:
      return generate(intent, b, s);
    case PromptRole::kAnswer:
      return answer(intent, b, s);
    case PromptRole::kOther:
      break;
  }
  return "I am not sure what you are asking.";
}

std::string RuleChatMock::select(const RequestIntent& intent, const MockBehavior& b, ItemState& s) {
  ++s.selector_calls;
  const auto& offered = intent.options;
  const std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(std::max(intent.k, 0)), offered.size());
  const auto gold_it = gold_.find(intent.item_id);
  const std::vector<std::string> no_gold;
  const auto& gold = gold_it == gold_.end() ? no_gold : gold_it->second;
  auto is_gold = [&](const std::string& w) { return std::find(gold.begin(), gold.end(), w) != gold.end(); };

  std::vector<std::string> picks;
  switch (b.selector) {
    case SelectorPolicy::kHead:
      picks.assign(offered.begin(), offered.begin() + static_cast<std::ptrdiff_t>(k));
      break;
    case SelectorPolicy::kTail:
      picks.assign(offered.end() - static_cast<std::ptrdiff_t>(k), offered.end());
      break;
    case SelectorPolicy::kSeeded: {
      std::vector<std::size_t> idx(offered.size());
      for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
      for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(splitmix64(s.rng) % (idx.size() - i));
        std::swap(idx[i], idx[j]);
        picks.push_back(offered[idx[i]]);
      }
      break;
    }
    case SelectorPolicy::kGold: {
      for (const auto& g : gold) {
        if (picks.size() < k && std::find(offered.begin(), offered.end(), g) != offered.end()) picks.push_back(g);
      }
      for (const auto& w : offered) {
        if (picks.size() >= k) break;
        if (!is_gold(w)) picks.push_back(w);
      }
      break;
    }
    case SelectorPolicy::kNonGoldTail: {
      for (auto it = offered.rbegin(); it != offered.rend() && picks.size() < k; ++it) {
        if (!is_gold(*it)) picks.push_back(*it);
      }
      std::reverse(picks.begin(), picks.end());
      break;
    }
  }

  const bool hallucinate =
      (b.hallucinate_at_pool_size > 0 && static_cast<int>(offered.size()) >= b.hallucinate_at_pool_size) ||
      (b.hallucinate_every > 0 && s.selector_calls % b.hallucinate_every == 0);
  if (hallucinate && !picks.empty()) picks.back() = fabricated_word(offered, s.selector_calls);
  return enumerate(picks);
}

std::string RuleChatMock::validate(const RequestIntent& intent, const MockBehavior& b, ItemState& s) {
  ++s.validator_calls;
  const bool reject = b.validator == ValidatorPolicy::kRejectAll ||
                      (b.validator == ValidatorPolicy::kRejectEvery && b.reject_every > 0 &&
                       s.validator_calls % b.reject_every == 0);
  switch (intent.role) {
    case PromptRole::kValidateS1:
      return reject ? "No" : "Yes";
    case PromptRole::kValidateS2:
      return reject ? "Yes" : "No";
    default:
      break;
  }
  if (!reject) return intent.target;
  return b.reject_style == RejectStyle::kBothGood ? "BOTH ARE GOOD" : intent.distractor;
}

std::string RuleChatMock::generate(const RequestIntent& intent, const MockBehavior& b, ItemState& s) {
  ++s.generator_calls;
  if (!b.generator_replies.empty()) {
    const std::size_t i = std::min<std::size_t>(static_cast<std::size_t>(s.generator_calls - 1),
                                                 b.generator_replies.size() - 1);
    return b.generator_replies[i];
  }
  std::set<std::string> avoid(intent.avoid.begin(), intent.avoid.end());
  std::vector<std::string> words;
  for (const auto& w : b.generator_words) {
    if (static_cast<int>(words.size()) >= intent.k) break;
    if (!avoid.contains(w) && w != intent.target) words.push_back(w);
  }
  if (words.empty()) return "Sorry, I have no further suggestions.";
  return enumerate(words);
}

std::string RuleChatMock::answer(const RequestIntent& intent, const MockBehavior& b, ItemState& s) {
  const auto& options = intent.options;
  if (options.empty()) return intent.target;
  switch (b.answer) {
    case AnswerPolicy::kCorrect:
      return intent.target;
    case AnswerPolicy::kFirst:
      return options.front();
    case AnswerPolicy::kRandom:
      return options[splitmix64(s.rng) % options.size()];
  }
  return intent.target;
}

LexiconMaskedSource::LexiconMaskedSource(const lexicon::Lexicon& lexicon, std::uint64_t seed) : seed_(seed) {
  std::set<std::string> unique;
  for (const auto& e : lexicon.all_entries()) unique.insert(e.lemma);
  words_.assign(unique.begin(), unique.end());
}

std::vector<MaskedPrediction> LexiconMaskedSource::predict(std::string_view masked_text, int /*top_n*/) {
  const std::uint64_t text_hash = fnv1a64(masked_text);
  std::vector<MaskedPrediction> out;
  out.reserve(words_.size());
  for (const auto& w : words_) {
    std::uint64_t state = seed_ ^ text_hash ^ fnv1a64(w);
    const double score = static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
    out.push_back(MaskedPrediction{w, score});
  }
  return out;
}

MockBehavior parse_mock_behavior(const nlohmann::json& j, MockBehavior b) {
  static const std::set<std::string> kKnown = {
      "selector",       "hallucinate_at_pool_size", "hallucinate_every", "validator", "reject_every",
      "reject_style",   "generator_replies",        "generator_words",   "answer",    "seed",
      "items",          "masked",                   "replies"};
  if (!j.is_object()) throw Error(ErrorCode::kInvalidConfig, "mock behavior must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!kKnown.contains(key)) throw Error(ErrorCode::kInvalidConfig, "mock script: unknown key '" + key + "'");
  }
  b.selector = parse_enum<SelectorPolicy>(j, "selector",
                                          {{"head", SelectorPolicy::kHead},
                                           {"tail", SelectorPolicy::kTail},
                                           {"seeded", SelectorPolicy::kSeeded},
                                           {"gold", SelectorPolicy::kGold},
                                           {"non_gold_tail", SelectorPolicy::kNonGoldTail}},
                                          b.selector);
  b.hallucinate_at_pool_size = j.value("hallucinate_at_pool_size", b.hallucinate_at_pool_size);
  b.hallucinate_every = j.value("hallucinate_every", b.hallucinate_every);
  b.validator = parse_enum<ValidatorPolicy>(j, "validator",
                                            {{"accept_all", ValidatorPolicy::kAcceptAll},
                                             {"reject_all", ValidatorPolicy::kRejectAll},
                                             {"reject_every", ValidatorPolicy::kRejectEvery}},
                                            b.validator);
  b.reject_every = j.value("reject_every", b.reject_every);
  b.reject_style = parse_enum<RejectStyle>(j, "reject_style",
                                           {{"distractor", RejectStyle::kChooseDistractor},
                                            {"both", RejectStyle::kBothGood}},
                                           b.reject_style);
  if (j.contains("generator_replies")) b.generator_replies = j.at("generator_replies").get<std::vector<std::string>>();
  if (j.contains("generator_words")) b.generator_words = j.at("generator_words").get<std::vector<std::string>>();
  b.answer = parse_enum<AnswerPolicy>(
      j, "answer", {{"correct", AnswerPolicy::kCorrect}, {"random", AnswerPolicy::kRandom}, {"first", AnswerPolicy::kFirst}},
      b.answer);
  return b;
}

std::unique_ptr<ChatClient> chat_client_from_mock_script(const nlohmann::json& script, std::uint64_t default_seed) {
  if (script.contains("replies")) {
    auto client = std::make_unique<ScriptedChatClient>();
    for (const auto& r : script.at("replies")) {
      if (r.is_string()) {
        client->push(r.get<std::string>());
      } else {
        client->push_failure(r.at("fail_status").get<int>());
      }
    }
    return client;
  }
  MockBehavior base = parse_mock_behavior(script);
  auto mock = std::make_unique<RuleChatMock>(base, script.value("seed", default_seed));
  if (script.contains("items")) {
    for (const auto& [id, overrides] : script.at("items").items()) {
      mock->set_item_behavior(id, parse_mock_behavior(overrides, base));
    }
  }
  return mock;
}

}  // namespace issr::modelio
