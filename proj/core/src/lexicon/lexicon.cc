#include "issr/lexicon/lexicon.h"

#include <algorithm>
#include <charconv>
#include <fstream>

#include "issr/core/blank.h"
#include "issr/core/error.h"

namespace issr::lexicon {

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto tab = line.find('\t', start);
    out.push_back(trim(std::string_view(line).substr(start, tab == std::string::npos ? std::string::npos : tab - start)));
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  return out;
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

}  // namespace

Lexicon::Lexicon(const Lemmatizer& lemmatizer) : lemmatizer_(&lemmatizer) {}

bool Lexicon::add(LexiconEntry entry) {
  if (entry.level < kMinLevel || entry.level > kMaxLevel) return false;
  if (!is_single_word(entry.lemma)) return false;
  entry.lemma = to_lower(entry.lemma);
  auto& rows = entries_[entry.lemma];
  for (const auto& row : rows) {
    if (row.pos == entry.pos) return false;
  }
  rows.push_back(std::move(entry));
  ++count_;
  return true;
}

bool Lexicon::contains(std::string_view lemma) const { return entries_.find(lemma) != entries_.end(); }

const std::vector<LexiconEntry>* Lexicon::entries(std::string_view lemma) const {
  auto it = entries_.find(lemma);
  return it == entries_.end() ? nullptr : &it->second;
}

std::string Lexicon::lemmatize(std::string_view word) const {
  return lemmatizer_->lemmatize(word, [this](std::string_view w) { return contains(w); });
}

std::optional<LookupResult> Lexicon::lookup_lemma(const std::string& lemma) const {
  const auto* rows = entries(lemma);
  if (rows == nullptr) return std::nullopt;
  LookupResult result;
  result.level = kMaxLevel;
  result.lemma = lemma;
  for (const auto& row : *rows) {
    result.level = std::min(result.level, row.level);
    result.pos.insert(row.pos);
  }
  return result;
}

std::optional<LookupResult> Lexicon::lookup_ly_adverb(const std::string& word) const {
  if (!ends_with(word, "ly") || word.size() < 5) return std::nullopt;
  const std::size_t n = word.size();
  std::vector<std::string> bases;
  if (ends_with(word, "ically")) bases.push_back(word.substr(0, n - 4));  // basically -> basic
  if (ends_with(word, "ily")) bases.push_back(word.substr(0, n - 3) + "y");  // happily -> happy
  bases.push_back(word.substr(0, n - 2));                                   // quickly -> quick
  bases.push_back(word.substr(0, n - 1) + "e");                             // gently -> gentle
  bases.push_back(word.substr(0, n - 2) + "e");                             // truly -> true
  if (ends_with(word, "lly")) bases.push_back(word.substr(0, n - 1));       // fully -> full

  for (const auto& base : bases) {
    const auto* rows = entries(base);
    if (rows == nullptr) continue;
    std::optional<int> adj_level;
    for (const auto& row : *rows) {
      if (row.pos == Pos::kAdj) adj_level = std::min(adj_level.value_or(kMaxLevel), row.level);
    }
    if (!adj_level) continue;
    return LookupResult{*adj_level, PosSet{Pos::kAdv}, base};
  }
  return std::nullopt;
}

std::optional<LookupResult> Lexicon::lookup(std::string_view word) const {
  const std::string lemma = lemmatize(word);
  if (lemma.empty()) return std::nullopt;
  if (auto hit = lookup_lemma(lemma)) return hit;
  return lookup_ly_adverb(lemma);
}

Level Lexicon::level(std::string_view word) const {
  if (auto hit = lookup(word)) return hit->level;
  return std::nullopt;
}

std::vector<LexiconEntry> Lexicon::all_entries() const {
  std::vector<LexiconEntry> out;
  out.reserve(count_);
  for (const auto& [lemma, rows] : entries_) out.insert(out.end(), rows.begin(), rows.end());
  return out;
}

WordlistLoad parse_wordlist(std::istream& source, const Lemmatizer& lemmatizer) {
  WordlistLoad load{Lexicon(lemmatizer), {}, 0};
  std::string line;
  int line_no = 0;
  auto warn = [&](const std::string& reason) {
    load.warnings.push_back(WordlistWarning{line_no, line, reason});
  };

  while (std::getline(source, line)) {
    ++line_no;
    if (line_no == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    ++load.rows;

    const auto cols = split_tabs(line);
    if (cols.size() != 3) {
      warn("expected 3 tab-separated columns, got " + std::to_string(cols.size()));
      continue;
    }
    const std::string word = to_lower(cols[0]);
    if (!is_single_word(word)) {
      warn("word must be a single token");
      continue;
    }
    const auto pos = parse_pos_code(cols[1]);
    if (!pos) {
      warn("unknown POS code '" + cols[1] + "'");
      continue;
    }
    int level = 0;
    const auto& lv = cols[2];
    auto [ptr, ec] = std::from_chars(lv.data(), lv.data() + lv.size(), level);
    if (ec != std::errc() || ptr != lv.data() + lv.size()) {
      warn("level '" + lv + "' is not an integer");
      continue;
    }
    if (level < kMinLevel || level > kMaxLevel) {
      warn("LevelOutOfRange: level " + std::to_string(level) + " outside [1,6]");
      continue;
    }
    if (!load.lexicon.add(LexiconEntry{word, *pos, level})) {
      warn("duplicate (word, pos) row");
    }
  }

  if (load.rows == 0) throw Error(ErrorCode::kEmptyFile, "wordlist has no data rows");
  return load;
}

WordlistLoad load_wordlist(const std::string& path, const Lemmatizer& lemmatizer) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open wordlist " + path);
  return parse_wordlist(in, lemmatizer);
}

}  // namespace issr::lexicon
