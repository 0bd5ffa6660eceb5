#include "issr/modelio/http_clients.h"


#include <httplib.h>
#include <nlohmann/json.hpp>

#include "issr/core/error.h"

namespace issr::modelio {

namespace {

bool retryable_status(int status) { return status == 408 || status == 429 || status >= 500; }

httplib::Headers auth_headers(const std::string& api_key) {
  httplib::Headers headers;
  if (!api_key.empty()) headers.emplace("Authorization", "Bearer " + api_key);
  return headers;
}

}  // namespace

std::pair<std::string, std::string> split_url(const std::string& url) {
  const auto scheme_end = url.find("://");
  const std::size_t host_start = scheme_end == std::string::npos ? 0 : scheme_end + 3;
  const auto path_start = url.find('/', host_start);
  if (path_start == std::string::npos) return {url, "/"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

// httplib::Client is not safe for concurrent requests; one per call keeps
// the client itself shareable across threads.
struct HttpChatClient::Impl {
  std::string base;
  std::string path;
};

HttpChatClient::HttpChatClient(HttpEndpoint endpoint) : endpoint_(std::move(endpoint)), impl_(std::make_unique<Impl>()) {
  std::tie(impl_->base, impl_->path) = split_url(endpoint_.url);
}

HttpChatClient::~HttpChatClient() = default;

std::string HttpChatClient::complete(const ChatRequest& request) {
  httplib::Client client(impl_->base);
  client.set_connection_timeout(endpoint_.timeout);
  client.set_read_timeout(endpoint_.timeout);

  nlohmann::json body = {{"model", endpoint_.model},
                         {"messages", nlohmann::json::array({{{"role", "user"}, {"content", request.prompt}}})},
                         {"temperature", request.temperature},
                         {"max_tokens", request.max_tokens}};
  auto res = client.Post(impl_->path, auth_headers(endpoint_.api_key), body.dump(), "application/json");
  if (!res) throw TransportError("chat endpoint unreachable: " + httplib::to_string(res.error()), true);
  if (res->status != 200) {
    throw TransportError("chat endpoint returned HTTP " + std::to_string(res->status), retryable_status(res->status),
                         res->status);
  }
  try {
    const auto reply = nlohmann::json::parse(res->body);
    const auto& content = reply.at("choices").at(0).at("message").at("content");
    return content.is_string() ? content.get<std::string>() : std::string{};
  } catch (const nlohmann::json::exception& e) {
    throw TransportError(std::string("malformed chat response: ") + e.what(), false, res->status);
  }
}

struct HttpMaskedSource::Impl {
  std::string base;
  std::string path;
};

HttpMaskedSource::HttpMaskedSource(HttpEndpoint endpoint)
    : endpoint_(std::move(endpoint)), impl_(std::make_unique<Impl>()) {
  std::tie(impl_->base, impl_->path) = split_url(endpoint_.url);
}

HttpMaskedSource::~HttpMaskedSource() = default;

std::vector<MaskedPrediction> HttpMaskedSource::predict(std::string_view masked_text, int top_n) {
  httplib::Client client(impl_->base);
  client.set_connection_timeout(endpoint_.timeout);
  client.set_read_timeout(endpoint_.timeout);
  const nlohmann::json body = {{"text", std::string(masked_text)}, {"top_n", top_n}};
  auto res = client.Post(impl_->path, auth_headers(endpoint_.api_key), body.dump(), "application/json");
  if (!res) throw TransportError("mask endpoint unreachable: " + httplib::to_string(res.error()), true);
  if (res->status != 200) {
    throw TransportError("mask endpoint returned HTTP " + std::to_string(res->status),
                         retryable_status(res->status), res->status);
  }
  nlohmann::json payload;
  try {
    payload = nlohmann::json::parse(res->body);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kBadPayload, std::string("mask endpoint sent invalid JSON: ") + e.what());
  }
  return parse_predictions(payload);
}

}  // namespace issr::modelio
