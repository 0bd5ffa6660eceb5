#include "issr/modelio/direct_generation.h"

#include <algorithm>

#include "issr/core/error.h"
#include "issr/modelio/parse.h"

namespace issr::modelio {

DirectGenerationResult direct_generate(ChatClient& client, const PromptSet& prompts,
                                       const DirectGenerationRequest& request) {
  if (request.count < 1) throw Error(ErrorCode::kInvalidConfig, "direct generation needs count >= 1");
  DirectGenerationResult result;
  const int per_round = std::max(1, request.rounds_of);

  while (static_cast<int>(result.words.size()) < request.count && result.rounds_used < request.max_rounds) {
    ++result.rounds_used;
    ChatRequest chat_request;
    chat_request.prompt = render_avoid_prompt(prompts, request.stem, request.target, result.words, per_round);
    chat_request.temperature = request.temperature;
    chat_request.max_tokens = request.max_tokens;
    chat_request.intent = RequestIntent{PromptRole::kDirectGeneration, request.item_id, request.target, {}, {},
                                        result.words, per_round};
    std::string reply = chat(client, chat_request, request.retry);
    result.replies.push_back(reply);

    ParsedList parsed;
    try {
      parsed = parse_enumerated(reply, -1, request.target);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kNoParsableLines) throw;
      continue;
    }
    for (auto& w : parsed.words) {
      if (static_cast<int>(result.words.size()) >= request.count) break;
      if (std::find(result.words.begin(), result.words.end(), w) == result.words.end()) {
        result.words.push_back(std::move(w));
      }
    }
  }
  return result;
}

}  // namespace issr::modelio
