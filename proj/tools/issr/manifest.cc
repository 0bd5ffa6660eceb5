#include "manifest.h"

#include <array>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <regex>

#include "issr/core/blank.h"
#include "issr/core/error.h"
#include "issr/core/json.h"

namespace issr::cli {

std::string redact_url(const std::string& url) {
  static const std::regex kUserInfo(R"(^([a-zA-Z][a-zA-Z0-9+.-]*://)[^/@]*@)");
  static const std::regex kSecretParam(R"(([?&](?:api[_-]?key|key|token|access_token|secret)=)[^&]*)",
                                       std::regex::icase);
  std::string out = std::regex_replace(url, kUserInfo, "$1");
  return std::regex_replace(out, kSecretParam, "$1REDACTED");
}

std::string git_describe(const std::filesystem::path& dir) {
  const std::string command = "git -C \"" + dir.string() + "\" describe --always --dirty 2>/dev/null";
  FILE* pipe = popen(command.c_str(), "r");
  if (pipe == nullptr) return "unknown";
  std::string text;
  std::array<char, 256> buf{};
  while (std::fgets(buf.data(), static_cast<int>(buf.size()), pipe) != nullptr) text += buf.data();
  const int status = pclose(pipe);
  text = trim(text);
  return status == 0 && !text.empty() ? text : "unknown";
}

nlohmann::json RunManifest::to_json() const {
  const std::time_t t = std::chrono::system_clock::to_time_t(started);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &tm);

  nlohmann::json endpoints_json = nlohmann::json::object();
  for (const auto& [name, url] : endpoints) endpoints_json[name] = redact_url(url);
  return nlohmann::json{{"command", command},
                        {"version", ISSR_VERSION},
                        {"config", config},
                        {"inputs", inputs},
                        {"endpoints", endpoints_json},
                        {"api_keys_present", api_keys_present},
                        {"templates", {{"digest", template_digest}, {"revision", template_revision}}},
                        {"outputs", outputs},
                        {"started_at", stamp},
                        {"wall_clock_seconds", wall_clock_seconds},
                        {"exit_code", exit_code},
                        {"extra", extra}};
}

void RunManifest::write(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write manifest " + path.string());
  out << to_json().dump(2) << '\n';
}

}  // namespace issr::cli
