#include "issr/core/blank.h"

#include <algorithm>
#include <cctype>

#include "issr/core/error.h"

namespace issr {

std::string normalize_blank(std::string_view stem) {
  std::size_t run_start = std::string_view::npos;
  std::size_t run_len = 0;
  int runs = 0;

  for (std::size_t i = 0; i < stem.size();) {
    if (stem[i] != '_') {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < stem.size() && stem[j] == '_') ++j;
    if (j - i >= kMinBlankRun) {
      ++runs;
      run_start = i;
      run_len = j - i;
    }
    i = j;
  }

  if (runs == 0) throw Error(ErrorCode::kNoBlank, "stem contains no blank (a run of >= 3 underscores)");
  if (runs > 1) {
    throw Error(ErrorCode::kMultipleBlanks,
                "stem contains " + std::to_string(runs) + " blanks; exactly one is supported");
  }

  std::string out;
  out.reserve(stem.size() + kBlankMarker.size());
  out.append(stem.substr(0, run_start));
  out.append(kBlankMarker);
  out.append(stem.substr(run_start + run_len));
  return out;
}

std::string fill_blank(std::string_view normalized_stem, std::string_view word) {
  const auto pos = normalized_stem.find(kBlankMarker);
  if (pos == std::string_view::npos) throw Error(ErrorCode::kNoBlank, "stem is not normalized");
  std::string out(normalized_stem.substr(0, pos));
  out.append(word);
  out.append(normalized_stem.substr(pos + kBlankMarker.size()));
  return out;
}

std::string to_lower(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string trim(std::string_view text) {
  auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
  std::size_t b = 0;
  std::size_t e = text.size();
  while (b < e && is_space(static_cast<unsigned char>(text[b]))) ++b;
  while (e > b && is_space(static_cast<unsigned char>(text[e - 1]))) --e;
  return std::string(text.substr(b, e - b));
}

bool is_single_word(std::string_view word) {
  if (word.empty()) return false;
  bool has_letter = false;
  for (unsigned char c : word) {
    if (std::isalpha(c)) {
      has_letter = true;
    } else if (c != '\'' && c != '-') {
      return false;
    }
  }
  return has_letter;
}

}  // namespace issr
