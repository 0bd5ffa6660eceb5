#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "issr/core/config.h"
#include "issr/lexicon/lexicon.h"
#include "issr/modelio/chat.h"
#include "issr/modelio/masked.h"
#include "issr/modelio/prompts.h"
#include "issr/pipeline/candidates.h"
#include "issr/service/event_log.h"
#include "issr/service/session.h"

namespace issr::service {

struct ServiceDeps {
  modelio::ChatClient* chat = nullptr;
  modelio::MaskedSource* masked = nullptr;
  const lexicon::Lexicon* lexicon = nullptr;
  const modelio::PromptSet* prompts = &modelio::PromptSet::builtin();
  PipelineConfig defaults;
  pipeline::PosTagger tagger;
};

struct CreateRequest {
  std::string stem;
  std::string target;
  std::map<std::string, std::string> overrides;
  std::optional<std::string> idempotency_key;
};

struct CreateResult {
  std::shared_ptr<const Session> session;
  // False when an earlier request with the same idempotency key answered.
  bool created = true;
};

/// Sessions kept in memory and persisted as one event log per session under
/// `data_dir`. Construction replays every log found there. Writes to one
/// session are serialized; readers get immutable snapshots.
class SessionService {
 public:
  SessionService(ServiceDeps deps, std::filesystem::path data_dir);

  CreateResult create(const CreateRequest& request);
  std::shared_ptr<const Session> get(const std::string& id) const;

  // `revision`, when given, must equal the current revision
  // (Error(kStaleRevision) otherwise).
  std::shared_ptr<const Session> decide(const std::string& id, const std::string& word, Decision decision,
                                        std::optional<std::int64_t> revision = std::nullopt);

  // Re-judges every pending word with `strategy`. Verdicts are replaced;
  // no word changes column.
  std::shared_ptr<const Session> revalidate(const std::string& id, ValidatorStrategy strategy,
                                            std::optional<std::int64_t> revision = std::nullopt);

  // Question document with the answer and three accepted distractors in a
  // seeded order. Throws Error(kNotEnoughAccepted) before three accepts.
  nlohmann::json export_question(const std::string& id, std::optional<std::uint64_t> seed = std::nullopt) const;

  std::vector<std::string> session_ids() const;
  const std::filesystem::path& data_dir() const { return data_dir_; }

 private:
  struct Slot {
    std::mutex write_mu;
    std::shared_ptr<const Session> current;
    std::unique_ptr<EventLog> log;
  };

  std::shared_ptr<Slot> slot(const std::string& id) const;
  std::shared_ptr<const Session> load(const std::shared_ptr<Slot>& s) const;
  void commit(Slot& s, Session& working, const nlohmann::json& event);
  void replenish(Slot& s, Session& working);
  std::string new_id(const CreateRequest& request);

  ServiceDeps deps_;
  std::filesystem::path data_dir_;
  mutable std::shared_mutex index_mu_;
  std::map<std::string, std::shared_ptr<Slot>> sessions_;
  std::map<std::string, std::string> by_idempotency_key_;
  std::mutex create_mu_;
  std::uint64_t id_counter_ = 0;
};

// Seeded shuffle used by export: Fisher-Yates over std::mt19937_64 output.
std::vector<std::string> seeded_shuffle(std::vector<std::string> items, std::uint64_t seed);

}  // namespace issr::service
