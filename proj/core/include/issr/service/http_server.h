#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "issr/core/error.h"
#include "issr/service/session_service.h"

namespace issr::service {

struct ServerOptions {
  std::string host = "127.0.0.1";
  // 0 binds an ephemeral port.
  int port = 8080;
  std::optional<std::filesystem::path> ui_dir;
};

int http_status(ErrorCode code);

/// JSON API over a SessionService, plus static files from `ui_dir` at "/".
class HttpServer {
 public:
  HttpServer(SessionService& service, ServerOptions options);
  ~HttpServer();

  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Binds the socket and returns the port. Throws Error(kIo) on failure.
  int bind();
  // Serves until stop(). Call bind() first.
  void serve();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace issr::service
