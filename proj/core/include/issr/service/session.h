#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "issr/core/config.h"
#include "issr/core/types.h"

namespace issr::service {

enum class Decision { kAccept, kReject };
std::optional<Decision> parse_decision(std::string_view text);

enum class SessionStatus { kActive, kFinalized, kPoolExhausted };
std::string_view to_string(SessionStatus status);

inline constexpr std::size_t kOptionsNeeded = 3;

struct Suggestion {
  std::string word;
  Level level;
  PosSet pos;
  Verdict verdict;
};

struct Rejection {
  std::string word;
  // "teacher" or the validator strategy that turned the word down.
  std::string source;
};

struct SelectorExchange {
  std::string prompt_hash;
  std::string reply;
};

/// Authoring state of one item. Built only by applying events, so a replay
/// of the same log always yields the same value.
struct Session {
  std::string id;
  QuestionItem item;
  PipelineConfig config;
  std::optional<std::string> idempotency_key;

  // Filtered candidates never offered yet, score order.
  std::vector<Candidate> pool;
  std::vector<std::string> accepted;
  std::vector<Rejection> rejected;
  std::vector<Suggestion> pending;
  // Every word ever shown to the selector's output; append-only.
  std::vector<std::string> offered;
  std::vector<SelectorExchange> exchanges;
  int rounds = 0;
  std::int64_t revision = 0;

  SessionStatus status() const;
  bool is_pending(std::string_view word) const;
};

// Event records. Each one bumps the revision by one.
//   {"type":"created", id, item, config, pool, idempotency_key?}
//   {"type":"round", prompt_hash, reply, selected, verdicts}
//   {"type":"decision", word, decision}
//   {"type":"revalidated", strategy, verdicts}
void apply_event(Session& session, const nlohmann::json& event);

// Full state; raw model replies only when `debug` is set.
nlohmann::json to_json(const Session& session, bool debug = false);

}  // namespace issr::service
