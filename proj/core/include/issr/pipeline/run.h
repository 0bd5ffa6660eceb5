#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "issr/core/config.h"
#include "issr/core/types.h"
#include "issr/lexicon/lexicon.h"
#include "issr/modelio/chat.h"
#include "issr/modelio/masked.h"
#include "issr/modelio/prompts.h"
#include "issr/pipeline/candidates.h"
#include "issr/pipeline/selector.h"

namespace issr::pipeline {

enum class StopReason { kTargetReached, kPoolExhausted, kMaxRounds };

std::string_view to_string(StopReason reason);

struct RoundAudit {
  int round = 0;
  std::vector<std::string> offered;
  SelectionOutcome selection;
  std::vector<Verdict> verdicts;
};

struct IssrResult {
  // Valid distractors in selection order.
  std::vector<std::string> distractors;
  std::vector<Verdict> verdicts;
  int rounds_used = 0;
  StopReason stop = StopReason::kTargetReached;
  // Pool as it stood before the first round, and its final state.
  std::vector<Candidate> initial_pool;
  CandidatePool pool;
  std::vector<RoundAudit> audit;
};

struct IssrClients {
  modelio::MaskedSource& masked;
  modelio::ChatClient& chat;
};

// Select, validate and consume until target_count valid distractors are
// found, the pool runs out, or max_rounds rounds have run.
IssrResult run_rounds(modelio::ChatClient& chat, const modelio::PromptSet& prompts, const QuestionItem& item,
                      CandidatePool pool, const PipelineConfig& config);

// Candidate generation followed by run_rounds.
IssrResult run_issr(const IssrClients& clients, const QuestionItem& item, const lexicon::Lexicon& lexicon,
                    const PipelineConfig& config, const modelio::PromptSet& prompts = modelio::PromptSet::builtin(),
                    const PosTagger& tagger = {});

// One JSON object per line: a generation record (round 0) followed by one
// record per selection round.
std::string audit_jsonl(const IssrResult& result, const std::string& item_id);
nlohmann::json audit_record(const RoundAudit& round);

}  // namespace issr::pipeline
