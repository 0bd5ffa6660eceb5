#include "issr/modelio/chat.h"

#include <thread>

#include "issr/core/blank.h"

namespace issr::modelio {

std::string chat(ChatClient& client, const ChatRequest& request, const RetryPolicy& retry) {
  const int attempts = retry.retry_limit + 1;
  std::string last_problem;
  for (int attempt = 0; attempt < attempts; ++attempt) {
    if (attempt > 0 && retry.backoff.count() > 0) {
      std::this_thread::sleep_for(retry.backoff * attempt);
    }
    try {
      std::string reply = client.complete(request);
      if (!trim(reply).empty()) return reply;
      last_problem = "empty reply";
    } catch (const TransportError& e) {
      if (!e.retryable()) throw;
      last_problem = e.what();
    }
  }
  throw Error(ErrorCode::kRetriesExhausted,
              "chat failed after " + std::to_string(attempts) + " attempts: " + last_problem);
}

}  // namespace issr::modelio
