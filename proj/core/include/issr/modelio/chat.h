#pragma once

#include <chrono>
#include <string>
#include <vector>

#include "issr/core/error.h"

namespace issr::modelio {

enum class PromptRole {
  kOther,
  kSelector,
  kSelectorRetry,
  kDirectGeneration,
  kValidateS1,
  kValidateS2,
  kValidateS3,
  kAnswer,
};

// Structured description of what a prompt asks for. Network clients ignore
// it; mock clients answer from it so their behavior does not depend on the
// template text.
struct RequestIntent {
  PromptRole role = PromptRole::kOther;
  std::string item_id;
  std::string target;
  std::string distractor;
  // Selector: the offered pool in prompt order. Answer: the option list.
  std::vector<std::string> options;
  std::vector<std::string> avoid;
  int k = 0;
};

struct ChatRequest {
  std::string prompt;
  double temperature = 0.7;
  int max_tokens = 256;
  RequestIntent intent;
};

class TransportError : public Error {
 public:
  TransportError(const std::string& message, bool retryable, int http_status = 0)
      : Error(ErrorCode::kTransport, message), retryable_(retryable), http_status_(http_status) {}

  bool retryable() const noexcept { return retryable_; }
  int http_status() const noexcept { return http_status_; }

 private:
  bool retryable_;
  int http_status_;
};

class ChatClient {
 public:
  virtual ~ChatClient() = default;
  // One attempt. Throws TransportError on failure.
  virtual std::string complete(const ChatRequest& request) = 0;
};

struct RetryPolicy {
  int retry_limit = 3;
  std::chrono::milliseconds backoff{0};
};

// Sends `request`, retrying retryable transport errors and empty replies up
// to retry_limit times. Throws TransportError for non-retryable failures and
// Error(kRetriesExhausted) once every attempt failed.
std::string chat(ChatClient& client, const ChatRequest& request, const RetryPolicy& retry);

}  // namespace issr::modelio
