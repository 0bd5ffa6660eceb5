#include "issr/core/dataset.h"

#include <fstream>

#include "issr/core/blank.h"
#include "issr/core/error.h"
#include "issr/core/json.h"

namespace issr {

std::vector<QuestionItem> read_dataset(std::istream& in) {
  std::vector<QuestionItem> items;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    try {
      items.push_back(parse_item(line));
    } catch (const Error& e) {
      throw Error(e.code() == ErrorCode::kInvalidItem ? ErrorCode::kInvalidItem : ErrorCode::kParse,
                  "line " + std::to_string(line_no) + ": " + e.what());
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kParse, "line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return items;
}

std::vector<QuestionItem> read_dataset(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open dataset " + path.string());
  return read_dataset(in);
}

std::string serialize_item(const QuestionItem& item) { return nlohmann::json(item).dump(); }

QuestionItem parse_item(std::string_view line) {
  return nlohmann::json::parse(line).get<QuestionItem>();
}

}  // namespace issr
