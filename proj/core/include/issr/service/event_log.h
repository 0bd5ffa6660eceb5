#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace issr::service {

/// Append-only JSON Lines file holding one session's events.
class EventLog {
 public:
  explicit EventLog(std::filesystem::path path);

  // Writes one line and flushes it before returning.
  void append(const nlohmann::json& event);

  // Every complete event in file order. A torn final line (an interrupted
  // write) is ignored; a malformed line elsewhere throws Error(kParse).
  static std::vector<nlohmann::json> read(const std::filesystem::path& path);

  // Cuts an unterminated final line left by an interrupted write, so later
  // appends start on a fresh line. Returns the number of bytes removed.
  static std::uintmax_t truncate_torn_tail(const std::filesystem::path& path);

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  std::ofstream out_;
};

}  // namespace issr::service
