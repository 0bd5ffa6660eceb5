#pragma once

#include <chrono>
#include <memory>
#include <string>

#include "issr/modelio/chat.h"
#include "issr/modelio/masked.h"

namespace issr::modelio {

struct HttpEndpoint {
  // Full URL, e.g. "http://localhost:8000/v1/chat/completions".
  std::string url;
  std::string model;
  std::string api_key;
  std::chrono::seconds timeout{60};
};

// Splits a URL into "scheme://host:port" and the path ("/" when absent).
std::pair<std::string, std::string> split_url(const std::string& url);

/// Chat-completion client: POSTs {model, messages, temperature, max_tokens}
/// and returns choices[0].message.content. HTTP 429 and 5xx are retryable.
class HttpChatClient : public ChatClient {
 public:
  explicit HttpChatClient(HttpEndpoint endpoint);
  ~HttpChatClient() override;

  std::string complete(const ChatRequest& request) override;

 private:
  struct Impl;
  HttpEndpoint endpoint_;
  std::unique_ptr<Impl> impl_;
};

/// POSTs {"text": ..., "top_n": ...} and expects [{"token", "score"}].
class HttpMaskedSource : public MaskedSource {
 public:
  explicit HttpMaskedSource(HttpEndpoint endpoint);
  ~HttpMaskedSource() override;

  std::vector<MaskedPrediction> predict(std::string_view masked_text, int top_n) override;

 private:
  struct Impl;
  HttpEndpoint endpoint_;
  std::unique_ptr<Impl> impl_;
};

}  // namespace issr::modelio
