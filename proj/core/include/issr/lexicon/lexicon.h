#pragma once

#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "issr/core/types.h"
#include "issr/lexicon/lemmatizer.h"

namespace issr::lexicon {

struct LexiconEntry {
  std::string lemma;
  Pos pos = Pos::kNoun;
  int level = kMinLevel;

  friend bool operator==(const LexiconEntry&, const LexiconEntry&) = default;
};

struct WordlistWarning {
  int line_no = 0;
  std::string line;
  std::string reason;
};

struct LookupResult {
  // Lowest level among the matching rows.
  int level = kMinLevel;
  PosSet pos;
  // Base form the match was made on (the adjective for a derived -ly adverb).
  std::string lemma;

  friend bool operator==(const LookupResult&, const LookupResult&) = default;
};

/// Graded wordlist. Immutable after construction.
class Lexicon {
 public:
  explicit Lexicon(const Lemmatizer& lemmatizer = Lemmatizer::builtin());

  // Rejects duplicate (lemma, pos) pairs and out-of-range levels by
  // returning false.
  bool add(LexiconEntry entry);

  // Lexicon-aware lemmatization (prefers base forms present in the list).
  std::string lemmatize(std::string_view word) const;

  // Lemmatizes, then matches. "-ly" adverbs missing from the list inherit
  // the level of their base adjective and report POS {Adv}.
  std::optional<LookupResult> lookup(std::string_view word) const;

  Level level(std::string_view word) const;
  bool contains(std::string_view lemma) const;
  const std::vector<LexiconEntry>* entries(std::string_view lemma) const;

  std::size_t size() const { return count_; }
  std::size_t lemma_count() const { return entries_.size(); }

  // Every entry in lemma order; used by mock candidate sources.
  std::vector<LexiconEntry> all_entries() const;

 private:
  std::optional<LookupResult> lookup_lemma(const std::string& lemma) const;
  std::optional<LookupResult> lookup_ly_adverb(const std::string& word) const;

  const Lemmatizer* lemmatizer_;
  std::map<std::string, std::vector<LexiconEntry>, std::less<>> entries_;
  std::size_t count_ = 0;
};

struct WordlistLoad {
  Lexicon lexicon;
  std::vector<WordlistWarning> warnings;
  // Non-blank, non-comment rows seen; always entries + warnings.
  int rows = 0;
};

// UTF-8 TSV `word<TAB>pos<TAB>level`. Malformed rows become warnings.
// Throws Error(kEmptyFile) when the source has no data rows.
WordlistLoad parse_wordlist(std::istream& source, const Lemmatizer& lemmatizer = Lemmatizer::builtin());
WordlistLoad load_wordlist(const std::string& path, const Lemmatizer& lemmatizer = Lemmatizer::builtin());

}  // namespace issr::lexicon
