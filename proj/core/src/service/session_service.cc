#include "issr/service/session_service.h"

#include <algorithm>
#include <chrono>
#include <random>

#include "issr/core/blank.h"
#include "issr/core/error.h"
#include "issr/core/hash.h"
#include "issr/core/json.h"
#include "issr/pipeline/selector.h"
#include "issr/pipeline/validator.h"

namespace issr::service {

std::vector<std::string> seeded_shuffle(std::vector<std::string> items, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (std::size_t i = items.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng() % i);
    std::swap(items[i - 1], items[j]);
  }
  return items;
}

SessionService::SessionService(ServiceDeps deps, std::filesystem::path data_dir)
    : deps_(std::move(deps)), data_dir_(std::move(data_dir)) {
  if (deps_.chat == nullptr || deps_.masked == nullptr || deps_.lexicon == nullptr || deps_.prompts == nullptr) {
    throw Error(ErrorCode::kInvalidConfig, "session service needs chat, masked source, lexicon and prompts");
  }
  deps_.defaults.validate();
  std::filesystem::create_directories(data_dir_);

  std::vector<std::filesystem::path> logs;
  for (const auto& entry : std::filesystem::directory_iterator(data_dir_)) {
    if (entry.is_regular_file() && entry.path().extension() == ".jsonl") logs.push_back(entry.path());
  }
  std::sort(logs.begin(), logs.end());
  for (const auto& path : logs) {
    EventLog::truncate_torn_tail(path);
    const auto events = EventLog::read(path);
    if (events.empty()) continue;
    Session session;
    for (const auto& e : events) apply_event(session, e);
    auto s = std::make_shared<Slot>();
    s->log = std::make_unique<EventLog>(path);
    if (session.idempotency_key) by_idempotency_key_[*session.idempotency_key] = session.id;
    std::atomic_store(&s->current, std::shared_ptr<const Session>(std::make_shared<Session>(std::move(session))));
    sessions_[std::atomic_load(&s->current)->id] = s;
  }
}

std::shared_ptr<SessionService::Slot> SessionService::slot(const std::string& id) const {
  std::shared_lock lock(index_mu_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw Error(ErrorCode::kUnknownSession, "no session '" + id + "'");
  return it->second;
}

std::shared_ptr<const Session> SessionService::load(const std::shared_ptr<Slot>& s) const {
  return std::atomic_load(&s->current);
}

std::shared_ptr<const Session> SessionService::get(const std::string& id) const { return load(slot(id)); }

std::vector<std::string> SessionService::session_ids() const {
  std::shared_lock lock(index_mu_);
  std::vector<std::string> ids;
  for (const auto& [id, s] : sessions_) ids.push_back(id);
  return ids;
}

void SessionService::commit(Slot& s, Session& working, const nlohmann::json& event) {
  apply_event(working, event);
  s.log->append(event);
  std::atomic_store(&s.current, std::shared_ptr<const Session>(std::make_shared<Session>(working)));
}

void SessionService::replenish(Slot& s, Session& working) {
  const auto call = pipeline::ModelCall::from_config(working.config);
  while (working.status() == SessionStatus::kActive && !working.pool.empty() &&
         working.accepted.size() + working.pending.size() < kOptionsNeeded) {
    const std::size_t need = kOptionsNeeded - working.accepted.size() - working.pending.size();
    std::vector<std::string> words;
    for (const auto& c : working.pool) words.push_back(c.surface);
    const int k = static_cast<int>(std::min(need, words.size()));

    pipeline::SelectionOutcome selection;
    try {
      selection = pipeline::select_round(*deps_.chat, *deps_.prompts, working.item, words, k, working.offered, call);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kSelectionFailed) throw;
      break;
    }
    nlohmann::json verdicts = nlohmann::json::array();
    for (const auto& w : selection.words) {
      verdicts.push_back(pipeline::validate(*deps_.chat, *deps_.prompts, working.item, w,
                                            working.config.validator_strategy, call));
    }
    std::string reply;
    for (const auto& a : selection.attempts) {
      if (!reply.empty()) reply += "\n\n";
      reply += a.reply;
    }
    commit(s, working,
           nlohmann::json{{"type", "round"},
                          {"prompt_hash", hex64(fnv1a64(selection.attempts.front().prompt))},
                          {"reply", reply},
                          {"selected", selection.words},
                          {"verdicts", verdicts}});
  }
}

std::string SessionService::new_id(const CreateRequest& request) {
  const auto now = std::chrono::steady_clock::now().time_since_epoch().count();
  std::string seed_text = request.stem + '\x1f' + request.target + '\x1f' + request.idempotency_key.value_or("") +
                          '\x1f' + std::to_string(now) + '\x1f' + std::to_string(++id_counter_);
  std::string id = hex64(fnv1a64(seed_text));
  std::shared_lock lock(index_mu_);
  while (sessions_.contains(id)) id = hex64(fnv1a64(id + std::to_string(++id_counter_)));
  return id;
}

CreateResult SessionService::create(const CreateRequest& request) {
  std::lock_guard create_lock(create_mu_);
  if (request.idempotency_key) {
    std::shared_lock lock(index_mu_);
    auto it = by_idempotency_key_.find(*request.idempotency_key);
    if (it != by_idempotency_key_.end()) return CreateResult{std::atomic_load(&sessions_.at(it->second)->current), false};
  }

  PipelineConfig config = deps_.defaults;
  for (const auto& [key, value] : request.overrides) apply_setting(config, key, value);
  config.validate();

  QuestionItem item;
  item.id = new_id(request);
  item.stem = normalize_blank(request.stem);
  item.answer = to_lower(trim(request.target));
  if (!is_single_word(item.answer)) throw Error(ErrorCode::kInvalidItem, "target must be a single word");
  item.validate();

  const auto pool = pipeline::generate_candidates(item, *deps_.masked, *deps_.lexicon, config, deps_.tagger);

  nlohmann::json created{{"type", "created"}, {"id", item.id}, {"item", item}, {"config", config}, {"pool", pool.items}};
  if (request.idempotency_key) created["idempotency_key"] = *request.idempotency_key;

  auto s = std::make_shared<Slot>();
  s->log = std::make_unique<EventLog>(data_dir_ / (item.id + ".jsonl"));
  std::lock_guard write_lock(s->write_mu);
  Session working;
  commit(*s, working, created);
  {
    std::unique_lock lock(index_mu_);
    sessions_[item.id] = s;
    if (request.idempotency_key) by_idempotency_key_[*request.idempotency_key] = item.id;
  }
  replenish(*s, working);
  return CreateResult{load(s), true};
}

std::shared_ptr<const Session> SessionService::decide(const std::string& id, const std::string& word,
                                                      Decision decision, std::optional<std::int64_t> revision) {
  auto s = slot(id);
  std::lock_guard lock(s->write_mu);
  Session working = *load(s);
  if (revision && *revision != working.revision) {
    throw Error(ErrorCode::kStaleRevision, "revision " + std::to_string(*revision) + " is stale; current is " +
                                               std::to_string(working.revision));
  }
  if (working.status() == SessionStatus::kFinalized) {
    throw Error(ErrorCode::kSessionFinalized, "session '" + id + "' already has its distractors");
  }
  const std::string w = to_lower(trim(word));
  if (!working.is_pending(w)) throw Error(ErrorCode::kUnknownWord, "'" + w + "' is not a pending suggestion");

  commit(*s, working,
         nlohmann::json{{"type", "decision"}, {"word", w}, {"decision", decision == Decision::kAccept ? "accept" : "reject"}});
  replenish(*s, working);
  return load(s);
}

std::shared_ptr<const Session> SessionService::revalidate(const std::string& id, ValidatorStrategy strategy,
                                                          std::optional<std::int64_t> revision) {
  auto s = slot(id);
  std::lock_guard lock(s->write_mu);
  Session working = *load(s);
  if (revision && *revision != working.revision) {
    throw Error(ErrorCode::kStaleRevision, "revision " + std::to_string(*revision) + " is stale; current is " +
                                               std::to_string(working.revision));
  }
  if (working.pending.empty()) return load(s);
  const auto call = pipeline::ModelCall::from_config(working.config);
  nlohmann::json verdicts = nlohmann::json::array();
  for (const auto& p : working.pending) {
    verdicts.push_back(pipeline::validate(*deps_.chat, *deps_.prompts, working.item, p.word, strategy, call));
  }
  commit(*s, working,
         nlohmann::json{{"type", "revalidated"}, {"strategy", std::string(to_string(strategy))}, {"verdicts", verdicts}});
  return load(s);
}

nlohmann::json SessionService::export_question(const std::string& id, std::optional<std::uint64_t> seed) const {
  const auto session = get(id);
  if (session->accepted.size() < kOptionsNeeded) {
    throw Error(ErrorCode::kNotEnoughAccepted, "export needs " + std::to_string(kOptionsNeeded) +
                                                   " accepted distractors, have " +
                                                   std::to_string(session->accepted.size()));
  }
  // Default seeds stay below 2^53 so JSON readers keep them exact.
  const std::uint64_t used_seed = seed.value_or(fnv1a64(id) >> 11);
  std::vector<std::string> options(session->accepted.begin(), session->accepted.begin() + kOptionsNeeded);
  options.push_back(session->item.answer);
  options = seeded_shuffle(std::move(options), used_seed);
  const auto answer_index = std::find(options.begin(), options.end(), session->item.answer) - options.begin();
  return nlohmann::json{{"id", session->id},
                        {"stem", session->item.stem},
                        {"options", options},
                        {"answer", session->item.answer},
                        {"answer_index", answer_index},
                        {"seed", used_seed},
                        {"revision", session->revision}};
}

}  // namespace issr::service
