#include "issr/modelio/parse.h"

#include <algorithm>
#include <cctype>
#include <set>

#include "issr/core/blank.h"
#include "issr/core/error.h"

namespace issr::modelio {

namespace {

bool is_word_char(char c) {
  const auto u = static_cast<unsigned char>(c);
  return std::isalnum(u) != 0 || c == '\'' || c == '-' || c == '_';
}

// Length of an enumeration marker ("12." or "3)") starting at i, else 0.
std::size_t marker_length(std::string_view line, std::size_t i) {
  std::size_t j = i;
  while (j < line.size() && std::isdigit(static_cast<unsigned char>(line[j]))) ++j;
  if (j == i || j - i > 3 || j >= line.size()) return 0;
  if (line[j] != '.' && line[j] != ')') return 0;
  if (i > 0 && !std::isspace(static_cast<unsigned char>(line[i - 1]))) return 0;
  // "3.14" is a number, not a marker.
  if (j + 1 < line.size() && std::isdigit(static_cast<unsigned char>(line[j + 1]))) return 0;
  return j + 1 - i;
}

// Splits one reply line at every enumeration marker.
std::vector<std::string> split_enumerations(std::string_view line) {
  std::vector<std::string> out;
  std::size_t seg_start = 0;
  bool saw_marker = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const std::size_t m = marker_length(line, i);
    if (m == 0) continue;
    const std::string before = trim(line.substr(seg_start, i - seg_start));
    if (!before.empty()) out.push_back(before);
    seg_start = i + m;
    i += m - 1;
    saw_marker = true;
  }
  const std::string rest = trim(line.substr(seg_start));
  if (!rest.empty()) out.push_back(rest);
  if (!saw_marker && out.empty()) return {};
  return out;
}

std::string strip_decoration(std::string_view text) {
  std::string s = trim(text);
  // Leading bullets.
  while (!s.empty() && (s.front() == '-' || s.front() == '*' || s.front() == '#' || s.front() == '>')) {
    s.erase(s.begin());
    s = trim(s);
  }
  if (s.rfind("\xE2\x80\xA2", 0) == 0) s = trim(s.substr(3));  // bullet sign
  auto strip_chars = [](std::string& v, std::string_view chars) {
    while (!v.empty() && chars.find(v.front()) != std::string_view::npos) v.erase(v.begin());
    while (!v.empty() && chars.find(v.back()) != std::string_view::npos) v.pop_back();
  };
  strip_chars(s, "\"'`*_");
  while (!s.empty() && (s.back() == '.' || s.back() == ',' || s.back() == ';' || s.back() == '!')) s.pop_back();
  strip_chars(s, "\"'`*_");
  return trim(s);
}

}  // namespace

ParsedList parse_enumerated(std::string_view reply, int expected, std::string_view target) {
  ParsedList out;
  const std::string target_lower = to_lower(trim(target));
  std::set<std::string> seen;

  auto consider = [&](const std::string& raw) {
    std::string word = to_lower(strip_decoration(raw));
    if (word.empty()) return;
    if (word.back() == ':') {
      out.dropped.push_back({raw, "heading"});
      return;
    }
    if (word.find_first_of(" \t") != std::string::npos) {
      out.dropped.push_back({raw, "multiword"});
      return;
    }
    if (!is_single_word(word)) {
      out.dropped.push_back({raw, "not a word"});
      return;
    }
    if (!target_lower.empty() && word == target_lower) {
      out.dropped.push_back({raw, "target"});
      return;
    }
    if (seen.contains(word)) {
      out.dropped.push_back({raw, "duplicate"});
      return;
    }
    if (expected >= 0 && static_cast<int>(out.words.size()) >= expected) {
      out.dropped.push_back({raw, "over limit"});
      return;
    }
    seen.insert(word);
    out.words.push_back(std::move(word));
  };

  std::size_t start = 0;
  while (start <= reply.size()) {
    auto nl = reply.find('\n', start);
    if (nl == std::string_view::npos) nl = reply.size();
    const std::string_view line = reply.substr(start, nl - start);
    for (const auto& segment : split_enumerations(line)) {
      // "brogue, lilt, twang" on one line. A comma inside prose does not
      // split it.
      std::vector<std::string> parts;
      std::size_t s = 0;
      while (s <= segment.size()) {
        auto comma = segment.find(',', s);
        if (comma == std::string::npos) comma = segment.size();
        std::string part = trim(std::string_view(segment).substr(s, comma - s));
        if (!part.empty()) parts.push_back(std::move(part));
        s = comma + 1;
      }
      const bool list = parts.size() > 1 && std::all_of(parts.begin(), parts.end(), [](const std::string& p) {
                          return p.find_first_of(" \t") == std::string::npos;
                        });
      if (list) {
        for (const auto& part : parts) consider(part);
      } else {
        consider(segment);
      }
    }
    start = nl + 1;
  }

  if (out.words.empty()) throw Error(ErrorCode::kNoParsableLines, "no parsable word in reply");
  return out;
}

std::optional<std::size_t> find_word(std::string_view haystack, std::string_view word) {
  if (word.empty()) return std::nullopt;
  std::size_t pos = haystack.find(word);
  while (pos != std::string_view::npos) {
    const bool left_ok = pos == 0 || !is_word_char(haystack[pos - 1]);
    const std::size_t end = pos + word.size();
    const bool right_ok = end >= haystack.size() || !is_word_char(haystack[end]);
    if (left_ok && right_ok) return pos;
    pos = haystack.find(word, pos + 1);
  }
  return std::nullopt;
}

VerdictReason parse_binary_verdict(std::string_view reply, std::string_view target, std::string_view distractor) {
  const std::string text = to_lower(reply);
  if (text.find("both are good") != std::string::npos) return VerdictReason::kBothGood;
  const auto t = find_word(text, to_lower(trim(target)));
  const auto d = find_word(text, to_lower(trim(distractor)));
  if (t && (!d || *t < *d)) return VerdictReason::kChoseTarget;
  if (d) return VerdictReason::kChoseDistractor;
  return VerdictReason::kParseFailure;
}

std::optional<bool> parse_yes_no(std::string_view reply) {
  const std::string text = to_lower(reply);
  const auto yes = find_word(text, "yes");
  const auto no = find_word(text, "no");
  if (yes && (!no || *yes < *no)) return true;
  if (no) return false;
  return std::nullopt;
}

std::optional<std::size_t> parse_choice(std::string_view reply, std::span<const std::string> options) {
  const std::string text = to_lower(reply);
  std::optional<std::size_t> best;
  std::size_t best_pos = std::string::npos;
  for (std::size_t i = 0; i < options.size(); ++i) {
    if (auto p = find_word(text, to_lower(trim(options[i]))); p && *p < best_pos) {
      best_pos = *p;
      best = i;
    }
  }
  return best;
}

}  // namespace issr::modelio
