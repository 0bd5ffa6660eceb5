#include "issr/service/session.h"

#include <algorithm>

#include "issr/core/error.h"
#include "issr/core/json.h"

namespace issr::service {

std::optional<Decision> parse_decision(std::string_view text) {
  if (text == "accept") return Decision::kAccept;
  if (text == "reject") return Decision::kReject;
  return std::nullopt;
}

std::string_view to_string(SessionStatus status) {
  switch (status) {
    case SessionStatus::kActive:
      return "active";
    case SessionStatus::kFinalized:
      return "finalized";
    case SessionStatus::kPoolExhausted:
      return "pool_exhausted";
  }
  return "unknown";
}

SessionStatus Session::status() const {
  if (accepted.size() >= kOptionsNeeded) return SessionStatus::kFinalized;
  if (pool.empty() && pending.empty()) return SessionStatus::kPoolExhausted;
  return SessionStatus::kActive;
}

bool Session::is_pending(std::string_view word) const {
  return std::any_of(pending.begin(), pending.end(), [&](const Suggestion& s) { return s.word == word; });
}

namespace {

void apply_round(Session& s, const nlohmann::json& event) {
  s.exchanges.push_back(SelectorExchange{event.at("prompt_hash").get<std::string>(), event.at("reply").get<std::string>()});
  for (const auto& vj : event.at("verdicts")) {
    Verdict v = vj.get<Verdict>();
    auto it = std::find_if(s.pool.begin(), s.pool.end(), [&](const Candidate& c) { return c.surface == v.distractor; });
    if (it == s.pool.end()) throw Error(ErrorCode::kParse, "round event offers '" + v.distractor + "' outside the pool");
    Candidate c = *it;
    s.pool.erase(it);
    s.offered.push_back(v.distractor);
    if (v.valid) {
      s.pending.push_back(Suggestion{c.surface, c.level, c.pos, std::move(v)});
    } else {
      s.rejected.push_back(Rejection{c.surface, std::string(to_string(v.strategy))});
    }
  }
  ++s.rounds;
}

void apply_decision(Session& s, const nlohmann::json& event) {
  const auto word = event.at("word").get<std::string>();
  const auto decision = parse_decision(event.at("decision").get<std::string>());
  auto it = std::find_if(s.pending.begin(), s.pending.end(), [&](const Suggestion& p) { return p.word == word; });
  if (it == s.pending.end() || !decision) throw Error(ErrorCode::kParse, "decision event for non-pending '" + word + "'");
  s.pending.erase(it);
  if (*decision == Decision::kAccept) {
    s.accepted.push_back(word);
    if (s.accepted.size() >= kOptionsNeeded) s.pending.clear();
  } else {
    s.rejected.push_back(Rejection{word, "teacher"});
  }
}

void apply_revalidation(Session& s, const nlohmann::json& event) {
  for (const auto& vj : event.at("verdicts")) {
    Verdict v = vj.get<Verdict>();
    for (auto& p : s.pending) {
      if (p.word == v.distractor) p.verdict = v;
    }
  }
}

}  // namespace

void apply_event(Session& session, const nlohmann::json& event) {
  const auto type = event.at("type").get<std::string>();
  if (type == "created") {
    session = Session{};
    session.id = event.at("id").get<std::string>();
    session.item = event.at("item").get<QuestionItem>();
    session.config = event.at("config").get<PipelineConfig>();
    session.pool = event.at("pool").get<std::vector<Candidate>>();
    if (event.contains("idempotency_key")) session.idempotency_key = event.at("idempotency_key").get<std::string>();
  } else if (type == "round") {
    apply_round(session, event);
  } else if (type == "decision") {
    apply_decision(session, event);
  } else if (type == "revalidated") {
    apply_revalidation(session, event);
  } else {
    throw Error(ErrorCode::kParse, "unknown session event '" + type + "'");
  }
  ++session.revision;
}

nlohmann::json to_json(const Session& s, bool debug) {
  auto verdict_json = [&](const Verdict& v) {
    nlohmann::json j = v;
    if (!debug) j.erase("raw_reply");
    return j;
  };
  nlohmann::json pending = nlohmann::json::array();
  for (const auto& p : s.pending) {
    pending.push_back({{"word", p.word},
                       {"level", p.level ? nlohmann::json(*p.level) : nlohmann::json(nullptr)},
                       {"pos", p.pos.to_string()},
                       {"verdict", verdict_json(p.verdict)}});
  }
  nlohmann::json rejected = nlohmann::json::array();
  for (const auto& r : s.rejected) rejected.push_back({{"word", r.word}, {"source", r.source}});

  nlohmann::json j{{"id", s.id},
                   {"revision", s.revision},
                   {"status", std::string(to_string(s.status()))},
                   {"item", s.item},
                   {"config", s.config},
                   {"accepted", s.accepted},
                   {"rejected", rejected},
                   {"pending", pending},
                   {"offered", s.offered},
                   {"pool_remaining", s.pool.size()},
                   {"rounds", s.rounds}};
  if (s.idempotency_key) j["idempotency_key"] = *s.idempotency_key;
  if (debug) {
    nlohmann::json exchanges = nlohmann::json::array();
    for (const auto& e : s.exchanges) exchanges.push_back({{"prompt_hash", e.prompt_hash}, {"reply", e.reply}});
    j["exchanges"] = exchanges;
    j["pool"] = s.pool;
  }
  return j;
}

}  // namespace issr::service
