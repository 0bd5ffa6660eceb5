#include <gtest/gtest.h>

#include <atomic>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "issr/core/error.h"
#include "issr/modelio/http_clients.h"
#include "issr/modelio/masked.h"

namespace issr::modelio {
namespace {

using json = nlohmann::json;

ChatRequest request(std::string prompt) {
  ChatRequest r;
  r.prompt = std::move(prompt);
  return r;
}

// httplib server on an ephemeral port, stopped on destruction.
class LocalServer {
 public:
  LocalServer() {
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~LocalServer() {
    server_.stop();
    thread_.join();
  }

  httplib::Server& server() { return server_; }
  std::string url(const std::string& path) const { return "http://127.0.0.1:" + std::to_string(port_) + path; }

 private:
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

TEST(HttpClients, SplitUrl) {
  EXPECT_EQ(split_url("http://localhost:8000/v1/chat/completions"),
            (std::pair<std::string, std::string>{"http://localhost:8000", "/v1/chat/completions"}));
  EXPECT_EQ(split_url("https://example.org"), (std::pair<std::string, std::string>{"https://example.org", "/"}));
}

TEST(HttpClients, ChatRetriesAfter429) {
  std::atomic<int> calls{0};
  json last_body;
  std::string auth;
  LocalServer local;
  local.server().Post("/v1/chat/completions", [&](const httplib::Request& req, httplib::Response& res) {
    if (calls.fetch_add(1) == 0) {
      res.status = 429;
      return;
    }
    last_body = json::parse(req.body);
    auth = req.get_header_value("Authorization");
    res.set_content(R"({"choices":[{"message":{"role":"assistant","content":"1. journey"}}]})", "application/json");
  });

  HttpChatClient client({local.url("/v1/chat/completions"), "test-model", "secret", std::chrono::seconds(5)});
  ChatRequest req{"pick three", 0.2, 64, {}};
  EXPECT_EQ(chat(client, req, RetryPolicy{3}), "1. journey");
  EXPECT_EQ(calls.load(), 2);
  EXPECT_EQ(last_body.at("model"), "test-model");
  EXPECT_EQ(last_body.at("messages").at(0).at("content"), "pick three");
  EXPECT_EQ(last_body.at("temperature"), 0.2);
  EXPECT_EQ(last_body.at("max_tokens"), 64);
  EXPECT_EQ(auth, "Bearer secret");
}

TEST(HttpClients, ChatClientErrorIsNotRetried) {
  std::atomic<int> calls{0};
  LocalServer local;
  local.server().Post("/chat", [&](const httplib::Request&, httplib::Response& res) {
    calls.fetch_add(1);
    res.status = 400;
  });
  HttpChatClient client({local.url("/chat"), "m", "", std::chrono::seconds(5)});
  try {
    chat(client, request("p"), RetryPolicy{3});
    FAIL();
  } catch (const TransportError& e) {
    EXPECT_EQ(e.http_status(), 400);
    EXPECT_FALSE(e.retryable());
  }
  EXPECT_EQ(calls.load(), 1);
}

TEST(HttpClients, ChatPersistent5xxExhaustsRetries) {
  std::atomic<int> calls{0};
  LocalServer local;
  local.server().Post("/chat", [&](const httplib::Request&, httplib::Response& res) {
    calls.fetch_add(1);
    res.status = 502;
  });
  HttpChatClient client({local.url("/chat"), "m", "", std::chrono::seconds(5)});
  try {
    chat(client, request("p"), RetryPolicy{2});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kRetriesExhausted);
  }
  EXPECT_EQ(calls.load(), 3);
}

TEST(HttpClients, UnreachableEndpointIsRetryableTransportError) {
  int port = 0;
  {
    httplib::Server probe;
    port = probe.bind_to_any_port("127.0.0.1");
  }
  HttpChatClient client({"http://127.0.0.1:" + std::to_string(port) + "/chat", "m", "", std::chrono::seconds(2)});
  try {
    client.complete(request("p"));
    FAIL();
  } catch (const TransportError& e) {
    EXPECT_TRUE(e.retryable());
  }
}

TEST(HttpClients, MaskedSource) {
  json seen;
  LocalServer local;
  local.server().Post("/predict", [&](const httplib::Request& req, httplib::Response& res) {
    seen = json::parse(req.body);
    res.set_content(R"([{"token":"journey","score":0.4},{"token":"traffic","score":0.7}])", "application/json");
  });
  HttpMaskedSource source({local.url("/predict"), "", "", std::chrono::seconds(5)});
  const auto top = masked_candidates(source, "sale of their [MASK] tickets", 10);
  ASSERT_EQ(top.size(), 2u);
  EXPECT_EQ(top[0].token, "traffic");
  EXPECT_EQ(seen.at("text"), "sale of their [MASK] tickets");
  EXPECT_EQ(seen.at("top_n"), 10);
}

TEST(HttpClients, MaskedSourceBadPayload) {
  LocalServer local;
  local.server().Post("/predict", [&](const httplib::Request&, httplib::Response& res) {
    res.set_content("not json", "application/json");
  });
  HttpMaskedSource source({local.url("/predict"), "", "", std::chrono::seconds(5)});
  try {
    source.predict("[MASK]", 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kBadPayload);
  }
}

}  // namespace
}  // namespace issr::modelio
