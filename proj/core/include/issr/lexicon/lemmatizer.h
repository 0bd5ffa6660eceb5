#pragma once

#include <functional>
#include <istream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace issr::lexicon {

// Predicate telling the lemmatizer which base forms exist in a wordlist.
using KnownWord = std::function<bool(std::string_view)>;

/// Deterministic rule-based English lemmatizer.
///
/// Resolution order for one step: irregular table, then (when a KnownWord
/// predicate is supplied) the word itself if known, then suffix rules
/// (-ies -> y, -es/-s strip, -ed/-ing strip with consonant un-doubling and
/// silent-e restoration). Among rule candidates the first known one wins;
/// without a known one the first candidate is the best guess. Steps repeat
/// until a fixed point, so lemmatize() is idempotent on its own outputs.
class Lemmatizer {
 public:
  // Table rows are `inflected<TAB>base`; '#' lines are comments. A row that
  // maps a word to itself protects it from the suffix rules ("news").
  static Lemmatizer from_table(std::istream& table);

  // Table compiled from data/irregular_forms.tsv.
  static const Lemmatizer& builtin();

  std::string lemmatize(std::string_view word, const KnownWord& known = {}) const;

  // Suffix-rule base forms for `word` in preference order; empty when no
  // rule applies. Does not consult the irregular table.
  static std::vector<std::string> rule_candidates(std::string_view word);

  std::size_t table_size() const { return table_.size(); }

 private:
  std::string step(const std::string& word, const KnownWord& known) const;

  std::unordered_map<std::string, std::string> table_;
};

}  // namespace issr::lexicon
