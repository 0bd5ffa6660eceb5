#include "issr/lexicon/lemmatizer.h"

#include <sstream>

#include "issr/core/blank.h"
#include "issr/core/error.h"
#include "embedded.h"

namespace issr::lexicon {

namespace {

constexpr int kMaxSteps = 32;

bool is_vowel(char c) { return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u'; }
bool is_consonant(char c) { return c >= 'a' && c <= 'z' && !is_vowel(c); }

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

bool has_vowel(std::string_view s) {
  for (char c : s) {
    if (is_vowel(c) || c == 'y') return true;
  }
  return false;
}

int vowel_groups(std::string_view s) {
  int groups = 0;
  bool in_group = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const bool v = is_vowel(s[i]) || (s[i] == 'y' && i > 0 && !in_group);
    if (v && !in_group) ++groups;
    in_group = v;
  }
  return groups;
}

// Stem (suffix removed) looks like it lost a silent 'e'.
bool wants_silent_e(std::string_view stem) {
  const std::size_t n = stem.size();
  if (n < 2) return false;
  const char last = stem[n - 1];
  const char prev = stem[n - 2];
  const char before = n >= 3 ? stem[n - 3] : '\0';

  if (last == 'v' || last == 'u') return true;
  if (last == 'c' && prev != 'c') return true;
  if (last == 'z' && prev != 'z') return true;
  if (last == 's' && is_vowel(prev) && prev != 'u' && before != '\0' && !is_vowel(before)) return true;
  if (last == 's' && prev == 'u' && n <= 4) return true;  // used, caused
  if (last == 'g' && (prev == 'd' || prev == 'r' || prev == 'l')) return true;
  if (!is_consonant(last) || last == 'w' || last == 'x' || last == 'y') return false;
  if (!is_vowel(prev)) return false;
  if (before != '\0' && is_vowel(before)) return false;  // rained, heated

  // Single syllable consonant-vowel-consonant: hoped, liked, named.
  if (vowel_groups(stem) == 1) return true;

  // Multi-syllable endings that almost always carry an 'e'.
  switch (prev) {
    case 'a':
      return last == 't' || last == 'r' || last == 'k' || last == 'm';
    case 'i':
      return last == 'd' || last == 'r' || last == 'n' || last == 'z' || last == 'k' || last == 'm';
    case 'u':
      return last == 'd' || last == 't' || last == 'r' || last == 's';
    case 'o':
      return last == 'd' || last == 'k' || (last == 'r' && vowel_groups(stem) <= 2);
    default:
      return false;
  }
}

// Candidates for a stem that lost -ed or -ing.
void verbal_candidates(const std::string& stem, std::vector<std::string>& out) {
  const std::size_t n = stem.size();
  if (n >= 3 && stem[n - 1] == stem[n - 2] && is_consonant(stem[n - 1])) {
    const char c = stem[n - 1];
    const bool cvcc = n >= 4 && is_vowel(stem[n - 3]) && is_consonant(stem[n - 4]);
    if (c == 'l') {
      out.push_back(stem);
      if (cvcc) out.push_back(stem.substr(0, n - 1));
      return;
    }
    if (c == 's' || c == 'z' || c == 'f' || !cvcc) {
      out.push_back(stem);
      return;
    }
    out.push_back(stem.substr(0, n - 1));
    out.push_back(stem);
    return;
  }
  if (wants_silent_e(stem)) {
    out.push_back(stem + "e");
    out.push_back(stem);
  } else {
    out.push_back(stem);
    out.push_back(stem + "e");
  }
}

}  // namespace

Lemmatizer Lemmatizer::from_table(std::istream& table) {
  Lemmatizer out;
  std::string line;
  int line_no = 0;
  while (std::getline(table, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto tab = t.find('\t');
    if (tab == std::string::npos) {
      throw Error(ErrorCode::kParse, "irregular table line " + std::to_string(line_no) + ": expected two columns");
    }
    out.table_[to_lower(trim(t.substr(0, tab)))] = to_lower(trim(t.substr(tab + 1)));
  }
  // Chase chains so every table value is final.
  for (auto& [form, base] : out.table_) {
    for (int i = 0; i < kMaxSteps; ++i) {
      auto it = out.table_.find(base);
      if (it == out.table_.end() || it->second == base) break;
      base = it->second;
    }
  }
  return out;
}

const Lemmatizer& Lemmatizer::builtin() {
  static const Lemmatizer instance = [] {
    std::istringstream in{std::string(detail::embedded_file("irregular_forms.tsv"))};
    return from_table(in);
  }();
  return instance;
}

std::vector<std::string> Lemmatizer::rule_candidates(std::string_view word_view) {
  const std::string w(word_view);
  const std::size_t n = w.size();
  std::vector<std::string> out;
  if (n <= 3) return out;

  if (ends_with(w, "ies")) {
    if (n > 4) out.push_back(w.substr(0, n - 3) + "y");
    out.push_back(w.substr(0, n - 1));
    return out;
  }
  if (ends_with(w, "ves")) {
    out.push_back(w.substr(0, n - 1));
    out.push_back(w.substr(0, n - 3) + "f");
    out.push_back(w.substr(0, n - 3) + "fe");
    return out;
  }
  if (ends_with(w, "sses") || ends_with(w, "shes") || ends_with(w, "ches") || ends_with(w, "xes") ||
      ends_with(w, "zzes") || ends_with(w, "oes")) {
    out.push_back(w.substr(0, n - 2));
    out.push_back(w.substr(0, n - 1));
    return out;
  }
  if (ends_with(w, "ses")) {
    out.push_back(w.substr(0, n - 1));
    out.push_back(w.substr(0, n - 2));
    return out;
  }
  if (ends_with(w, "s")) {
    if (ends_with(w, "ss") || ends_with(w, "us") || ends_with(w, "is")) return out;
    out.push_back(w.substr(0, n - 1));
    return out;
  }
  if (ends_with(w, "ied")) {
    if (n > 4) out.push_back(w.substr(0, n - 3) + "y");
    return out;
  }
  if (ends_with(w, "eed")) return out;
  if (ends_with(w, "ed") && n >= 5) {
    const std::string stem = w.substr(0, n - 2);
    if (!has_vowel(stem)) return out;
    if (ends_with(stem, "e")) {
      out.push_back(stem);  // agreed handled above; "freed" is tabled
      return out;
    }
    verbal_candidates(stem, out);
    return out;
  }
  if (ends_with(w, "ing") && n >= 5) {
    const std::string stem = w.substr(0, n - 3);
    if (!has_vowel(stem) || stem.size() < 2) return out;
    if (ends_with(stem, "y") || is_vowel(stem.back())) {
      out.push_back(stem);
      return out;
    }
    verbal_candidates(stem, out);
    return out;
  }
  return out;
}

std::string Lemmatizer::step(const std::string& word, const KnownWord& known) const {
  if (auto it = table_.find(word); it != table_.end()) return it->second;
  if (known && known(word)) return word;
  const auto candidates = rule_candidates(word);
  if (candidates.empty()) return word;
  if (known) {
    for (const auto& c : candidates) {
      if (known(c)) return c;
    }
    // Protected base forms from the table count as known too.
    for (const auto& c : candidates) {
      if (table_.contains(c)) return c;
    }
  }
  return candidates.front();
}

std::string Lemmatizer::lemmatize(std::string_view word, const KnownWord& known) const {
  std::string current = to_lower(trim(word));
  for (int i = 0; i < kMaxSteps; ++i) {
    std::string next = step(current, known);
    if (next == current) break;
    current = std::move(next);
  }
  return current;
}

}  // namespace issr::lexicon
