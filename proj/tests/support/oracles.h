#pragma once

// Reference implementations used as test oracles. They are written from the
// metric and filter definitions, not from the library code, and favor
// obviousness over speed.

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "issr/core/types.h"
#include "issr/lexicon/lexicon.h"
#include "test_support.h"

namespace issr::testing {

inline double ref_f1(const std::vector<std::string>& generated, const std::vector<std::string>& gold, int k) {
  const std::set<std::string> gold_set(gold.begin(), gold.end());
  std::set<std::string> top;
  for (int i = 0; i < k && i < static_cast<int>(generated.size()); ++i) top.insert(generated[i]);
  int hits = 0;
  for (const auto& g : gold_set) hits += top.count(g) ? 1 : 0;
  if (hits == 0) return 0.0;
  const double p = static_cast<double>(hits) / k;
  const double r = static_cast<double>(hits) / static_cast<double>(gold_set.size());
  return 2 * p * r / (p + r);
}

// DCG as a sum over gold words of the discount at their first rank.
inline double ref_dcg(const std::vector<std::string>& ranking, const std::set<std::string>& gold, int k) {
  double dcg = 0.0;
  for (const auto& g : gold) {
    for (int rank = 1; rank <= k && rank <= static_cast<int>(ranking.size()); ++rank) {
      if (ranking[static_cast<std::size_t>(rank - 1)] == g) {
        dcg += 1.0 / std::log2(rank + 1.0);
        break;
      }
    }
  }
  return dcg;
}

// Ideal DCG found by trying every ordering of the gold words.
inline double ref_ndcg(const std::vector<std::string>& generated, const std::vector<std::string>& gold, int k) {
  const std::set<std::string> gold_set(gold.begin(), gold.end());
  std::vector<std::string> perm(gold_set.begin(), gold_set.end());
  double best = 0.0;
  do {
    best = std::max(best, ref_dcg(perm, gold_set, k));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return ref_dcg(generated, gold_set, k) / best;
}

struct MetricInstance {
  std::vector<std::string> generated;
  std::vector<std::string> gold;
  int k = 1;
};

inline MetricInstance random_metric_instance(Gen& g) {
  static const std::vector<std::string> vocab = {"apple", "berry", "cherry", "date", "elder", "fig", "grape", "kiwi"};
  MetricInstance m;
  const int n = g.between(0, 6);
  for (int i = 0; i < n; ++i) {
    // Mostly distinct rankings, with the occasional repeat.
    std::string w = g.pick(vocab);
    if (!g.chance(0.1)) {
      while (std::find(m.generated.begin(), m.generated.end(), w) != m.generated.end()) w = g.pick(vocab);
    }
    m.generated.push_back(w);
  }
  m.gold = g.sample(vocab, static_cast<std::size_t>(g.between(1, 3)));
  m.k = g.between(1, 8);
  return m;
}

struct SyntheticWord {
  int level = 1;
  PosSet pos;
};

struct FilterFixture {
  lexicon::Lexicon lexicon;
  std::map<std::string, SyntheticWord> truth;
  std::vector<std::string> words;
};

// Invented words built from consonant-vowel pairs so no suffix rule applies,
// each with one or two POS rows at random levels.
inline FilterFixture synthetic_filter_fixture(Gen& g, int count) {
  static const std::string consonants = "bdfgklmnprtvz";
  static const std::string vowels = "aiou";
  static const std::vector<Pos> tags = {Pos::kNoun, Pos::kVerb, Pos::kAdj, Pos::kAdv};
  FilterFixture f;
  while (static_cast<int>(f.words.size()) < count) {
    std::string w;
    const int syllables = g.between(1, 5);
    for (int i = 0; i < syllables; ++i) {
      w += consonants[g.next() % consonants.size()];
      w += vowels[g.next() % vowels.size()];
    }
    if (g.chance(0.5)) w += consonants[g.next() % consonants.size()];
    if (w.size() < 2 || f.truth.contains(w)) continue;
    SyntheticWord truth;
    const int rows = g.between(1, 2);
    truth.level = kMaxLevel;
    for (int r = 0; r < rows; ++r) {
      const Pos p = g.pick(tags);
      const int level = g.between(kMinLevel, kMaxLevel);
      if (f.lexicon.add({w, p, level})) {
        truth.pos.insert(p);
        truth.level = std::min(truth.level, level);
      }
    }
    if (f.lexicon.lemmatize(w) != w) continue;
    f.truth[w] = truth;
    f.words.push_back(w);
  }
  return f;
}

// The three stated rules plus the preconditions that make them decidable.
inline bool ref_keep(const FilterFixture& f, const std::string& answer, const std::string& candidate,
                     const PipelineConfig& config) {
  if (candidate.empty()) return false;
  bool letter = false;
  for (char c : candidate) {
    if (c >= 'a' && c <= 'z') {
      letter = true;
    } else if (c != '\'' && c != '-') {
      return false;
    }
  }
  if (!letter || candidate == answer) return false;
  auto c = f.truth.find(candidate);
  auto a = f.truth.find(answer);
  if (c == f.truth.end() || a == f.truth.end()) return false;
  const long len_diff = static_cast<long>(candidate.size()) - static_cast<long>(answer.size());
  if (len_diff > config.length_delta_max || -len_diff > config.length_delta_max) return false;
  if (!c->second.pos.intersects(a->second.pos)) return false;
  const int level_diff = c->second.level - a->second.level;
  return level_diff <= config.difficulty_delta_max && -level_diff <= config.difficulty_delta_max;
}

struct FilterPair {
  std::string answer;
  std::string candidate;
};

inline FilterPair random_filter_pair(Gen& g, const FilterFixture& f) {
  FilterPair p;
  p.answer = g.pick(f.words);
  const int kind = g.between(0, 9);
  if (kind <= 6) {
    p.candidate = g.pick(f.words);
  } else if (kind == 7) {
    p.candidate = "q" + g.word(1, 8);
  } else if (kind == 8) {
    p.candidate = g.pick(f.words) + " " + g.pick(f.words);
  } else {
    p.candidate = g.chance(0.5) ? p.answer : g.pick(f.words) + std::to_string(g.between(0, 9));
  }
  return p;
}

// Naive two-pass formulas in long double.
inline double ref_mean(const std::vector<double>& v) {
  long double s = 0;
  for (double x : v) s += x;
  return static_cast<double>(s / v.size());
}

inline double ref_population_std(const std::vector<double>& v) {
  const long double m = ref_mean(v);
  long double s = 0;
  for (double x : v) s += (x - m) * (x - m);
  return static_cast<double>(std::sqrt(s / v.size()));
}

inline double ref_pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const long double mx = ref_mean(x);
  const long double my = ref_mean(y);
  long double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return static_cast<double>(sxy / std::sqrt(sxx * syy));
}

}  // namespace issr::testing
