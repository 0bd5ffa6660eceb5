#include "issr/service/http_server.h"

#include <charconv>

#include <httplib.h>
#include <nlohmann/json.hpp>

namespace issr::service {

int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNoBlank:
    case ErrorCode::kMultipleBlanks:
    case ErrorCode::kInvalidItem:
    case ErrorCode::kInvalidConfig:
    case ErrorCode::kParse:
      return 400;
    case ErrorCode::kUnknownSession:
    case ErrorCode::kUnknownWord:
      return 404;
    case ErrorCode::kStaleRevision:
    case ErrorCode::kSessionFinalized:
    case ErrorCode::kNotEnoughAccepted:
      return 409;
    case ErrorCode::kUngradedAnswer:
    case ErrorCode::kInsufficientCandidates:
      return 422;
    case ErrorCode::kTransport:
    case ErrorCode::kRetriesExhausted:
    case ErrorCode::kBadPayload:
    case ErrorCode::kSelectionFailed:
      return 502;
    default:
      return 500;
  }
}

namespace {

void send_json(httplib::Response& res, int status, const nlohmann::json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, std::string_view code, std::string_view message) {
  send_json(res, status, {{"code", code}, {"message", message}});
}

nlohmann::json body_of(const httplib::Request& req) {
  if (req.body.empty()) return nlohmann::json::object();
  auto j = nlohmann::json::parse(req.body);
  if (!j.is_object()) throw Error(ErrorCode::kParse, "request body must be a JSON object");
  return j;
}

std::optional<std::int64_t> revision_of(const nlohmann::json& body) {
  if (!body.contains("revision") || body.at("revision").is_null()) return std::nullopt;
  return body.at("revision").get<std::int64_t>();
}

bool debug_of(const httplib::Request& req) {
  return req.has_param("debug") && req.get_param_value("debug") != "0";
}

std::string setting_text(const nlohmann::json& value) {
  return value.is_string() ? value.get<std::string>() : value.dump();
}

}  // namespace

struct HttpServer::Impl {
  SessionService& service;
  ServerOptions options;
  httplib::Server server;
  int port = -1;

  Impl(SessionService& s, ServerOptions o) : service(s), options(std::move(o)) { routes(); }

  void routes() {
    server.set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
      try {
        std::rethrow_exception(ep);
      } catch (const Error& e) {
        send_error(res, http_status(e.code()), to_string(e.code()), e.what());
      } catch (const nlohmann::json::exception& e) {
        send_error(res, 400, to_string(ErrorCode::kParse), e.what());
      } catch (const std::exception& e) {
        send_error(res, 500, "Internal", e.what());
      }
    });

    server.Get("/healthz", [this](const httplib::Request&, httplib::Response& res) {
      send_json(res, 200, {{"status", "ok"}, {"sessions", service.session_ids().size()}});
    });

    server.Post("/sessions", [this](const httplib::Request& req, httplib::Response& res) {
      const auto body = body_of(req);
      CreateRequest create;
      create.stem = body.at("stem").get<std::string>();
      create.target = body.at("target").get<std::string>();
      if (body.contains("config")) {
        for (const auto& [key, value] : body.at("config").items()) create.overrides[key] = setting_text(value);
      }
      if (req.has_header("Idempotency-Key")) {
        create.idempotency_key = req.get_header_value("Idempotency-Key");
      } else if (body.contains("idempotency_key")) {
        create.idempotency_key = body.at("idempotency_key").get<std::string>();
      }
      const auto result = service.create(create);
      send_json(res, result.created ? 201 : 200, to_json(*result.session, debug_of(req)));
    });

    server.Get(R"(/sessions/([0-9A-Za-z_-]+))", [this](const httplib::Request& req, httplib::Response& res) {
      send_json(res, 200, to_json(*service.get(req.matches[1]), debug_of(req)));
    });

    server.Post(R"(/sessions/([0-9A-Za-z_-]+)/decisions)", [this](const httplib::Request& req,
                                                                   httplib::Response& res) {
      const auto body = body_of(req);
      const auto decision = parse_decision(body.at("decision").get<std::string>());
      if (!decision) throw Error(ErrorCode::kParse, "decision must be \"accept\" or \"reject\"");
      const auto session = service.decide(req.matches[1], body.at("word").get<std::string>(), *decision,
                                          revision_of(body));
      send_json(res, 200, to_json(*session, debug_of(req)));
    });

    server.Post(R"(/sessions/([0-9A-Za-z_-]+)/validate)", [this](const httplib::Request& req,
                                                                  httplib::Response& res) {
      const auto body = body_of(req);
      const auto strategy = parse_strategy(body.value("strategy", std::string("s3")));
      if (!strategy) throw Error(ErrorCode::kParse, "strategy must be s1, s2 or s3");
      const auto session = service.revalidate(req.matches[1], *strategy, revision_of(body));
      send_json(res, 200, to_json(*session, debug_of(req)));
    });

    server.Get(R"(/sessions/([0-9A-Za-z_-]+)/export)", [this](const httplib::Request& req, httplib::Response& res) {
      std::optional<std::uint64_t> seed;
      if (req.has_param("seed")) {
        const auto text = req.get_param_value("seed");
        std::uint64_t value = 0;
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec != std::errc() || ptr != text.data() + text.size()) {
          throw Error(ErrorCode::kParse, "seed must be an unsigned integer");
        }
        seed = value;
      }
      send_json(res, 200, service.export_question(req.matches[1], seed));
    });

    if (options.ui_dir && std::filesystem::is_directory(*options.ui_dir)) {
      server.set_mount_point("/", options.ui_dir->string());
    }
  }
};

HttpServer::HttpServer(SessionService& service, ServerOptions options)
    : impl_(std::make_unique<Impl>(service, std::move(options))) {}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind() {
  if (impl_->options.port == 0) {
    impl_->port = impl_->server.bind_to_any_port(impl_->options.host);
  } else if (impl_->server.bind_to_port(impl_->options.host, impl_->options.port)) {
    impl_->port = impl_->options.port;
  }
  if (impl_->port < 0) {
    throw Error(ErrorCode::kIo, "cannot bind " + impl_->options.host + ":" + std::to_string(impl_->options.port));
  }
  return impl_->port;
}

void HttpServer::serve() { impl_->server.listen_after_bind(); }

void HttpServer::stop() {
  if (impl_ && impl_->server.is_running()) impl_->server.stop();
}

}  // namespace issr::service
