#include "issr/service/event_log.h"

#include <iterator>

#include "issr/core/blank.h"
#include "issr/core/error.h"

namespace issr::service {

EventLog::EventLog(std::filesystem::path path) : path_(std::move(path)) {
  out_.open(path_, std::ios::binary | std::ios::app);
  if (!out_) throw Error(ErrorCode::kIo, "cannot open event log " + path_.string());
}

void EventLog::append(const nlohmann::json& event) {
  out_ << event.dump() << '\n';
  out_.flush();
  if (!out_) throw Error(ErrorCode::kIo, "write to " + path_.string() + " failed");
}

std::vector<nlohmann::json> EventLog::read(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read event log " + path.string());
  std::vector<std::string> lines;
  std::string line;
  bool ends_with_newline = true;
  while (std::getline(in, line)) {
    lines.push_back(line);
    ends_with_newline = !in.eof();
  }
  std::vector<nlohmann::json> events;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (trim(lines[i]).empty()) continue;
    try {
      events.push_back(nlohmann::json::parse(lines[i]));
    } catch (const nlohmann::json::parse_error& e) {
      const bool torn_tail = i + 1 == lines.size() && !ends_with_newline;
      if (torn_tail) break;
      throw Error(ErrorCode::kParse, path.string() + " line " + std::to_string(i + 1) + ": " + e.what());
    }
  }
  return events;
}

std::uintmax_t EventLog::truncate_torn_tail(const std::filesystem::path& path) {
  std::string content;
  {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::kIo, "cannot read event log " + path.string());
    content.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }
  if (content.empty() || content.back() == '\n') return 0;
  const auto keep = content.rfind('\n');
  const std::uintmax_t new_size = keep == std::string::npos ? 0 : keep + 1;
  std::filesystem::resize_file(path, new_size);
  return content.size() - new_size;
}

}  // namespace issr::service
