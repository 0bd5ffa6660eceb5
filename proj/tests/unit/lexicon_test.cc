#include <gtest/gtest.h>

#include <sstream>

#include "issr/core/error.h"
#include "issr/lexicon/lemmatizer.h"
#include "issr/lexicon/lexicon.h"
#include "test_support.h"

namespace issr::lexicon {
namespace {

using issr::testing::Gen;

WordlistLoad parse(const std::string& text) {
  std::istringstream in(text);
  return parse_wordlist(in);
}

TEST(Wordlist, ParsesRows) {
  const auto load = parse("# word\tpos\tlevel\ntrue\tadj\t1\ntruth\tn\t2\ntruth\tn\t9\n");
  EXPECT_EQ(load.rows, 3);
  ASSERT_EQ(load.warnings.size(), 1u);
  EXPECT_EQ(load.warnings[0].line_no, 4);
  EXPECT_NE(load.warnings[0].reason.find("LevelOutOfRange"), std::string::npos);
  ASSERT_NE(load.lexicon.entries("true"), nullptr);
  EXPECT_EQ(load.lexicon.entries("true")->front(), (LexiconEntry{"true", Pos::kAdj, 1}));
  EXPECT_EQ(load.lexicon.entries("truth")->front(), (LexiconEntry{"truth", Pos::kNoun, 2}));
}

TEST(Wordlist, MalformedRowsBecomeWarnings) {
  const auto load = parse("a\tn\nbook\tnoun\t1\nice cream\tn\t2\ndog\tn\tx\ndog\tn\t1\ndog\tn\t2\r\n");
  EXPECT_EQ(load.rows, 6);
  EXPECT_EQ(load.warnings.size(), 5u);
  EXPECT_EQ(load.lexicon.size(), 1u);
}

TEST(Wordlist, EmptyFile) {
  try {
    parse("# only a comment\n\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyFile);
  }
}

TEST(Wordlist, RowAccountingProperty) {
  Gen g(21);
  const std::vector<std::string> pos = {"n", "v", "adj", "adv", "prep", "conj", "pron", "art", "x", ""};
  for (int trial = 0; trial < 100; ++trial) {
    std::string text;
    const int n = g.between(1, 40);
    for (int i = 0; i < n; ++i) {
      if (g.chance(0.1)) text += "# comment\n";
      if (g.chance(0.1)) text += "\n";
      text += g.word(1, 4) + "\t" + g.pick(pos) + "\t" + std::to_string(g.between(0, 7));
      if (g.chance(0.05)) text += "\textra";
      text += "\n";
    }
    const auto load = parse(text);
    EXPECT_EQ(static_cast<std::size_t>(load.rows), load.lexicon.size() + load.warnings.size());
    EXPECT_EQ(load.rows, n);
  }
}

TEST(Lemmatizer, Examples) {
  const auto& l = Lemmatizer::builtin();
  EXPECT_EQ(l.lemmatize("tickets"), "ticket");
  EXPECT_EQ(l.lemmatize("displayed"), "display");
  EXPECT_EQ(l.lemmatize("spoke"), "speak");
  EXPECT_EQ(l.lemmatize("stories"), "story");
  EXPECT_EQ(l.lemmatize("boxes"), "box");
  EXPECT_EQ(l.lemmatize("hoped"), "hope");
  EXPECT_EQ(l.lemmatize("running"), "run");
  EXPECT_EQ(l.lemmatize("children"), "child");
  EXPECT_EQ(l.lemmatize("news"), "news");
  EXPECT_EQ(l.lemmatize("went"), "go");
  EXPECT_EQ(l.lemmatize("bus"), "bus");
  EXPECT_GT(l.table_size(), 150u);
}

TEST(Lemmatizer, KnownWordsWinOverRules) {
  const auto& l = Lemmatizer::builtin();
  auto known = [](std::string_view w) { return w == "clothes" || w == "cloth" || w == "bake"; };
  EXPECT_EQ(l.lemmatize("clothes", known), "clothes");
  EXPECT_EQ(l.lemmatize("baked", known), "bake");
}

TEST(Lemmatizer, CustomTable) {
  std::istringstream table("# comment\nmice\tmouse\nfeet\tfoot\n");
  const auto l = Lemmatizer::from_table(table);
  EXPECT_EQ(l.table_size(), 2u);
  EXPECT_EQ(l.lemmatize("mice"), "mouse");
  EXPECT_EQ(l.lemmatize("went"), "went");
}

TEST(Lemmatizer, IdempotentProperty) {
  const auto& lemmatizer = Lemmatizer::builtin();
  const auto& lex = issr::testing::fixture_lexicon();
  auto known = [&](std::string_view w) { return lex.contains(w); };
  Gen g(3);
  const std::vector<std::string> suffixes = {"", "s", "es", "ies", "ed", "ing", "ied", "ves", "ly", "er"};
  std::vector<std::string> words;
  for (int i = 0; i < 2000; ++i) words.push_back(g.word(1, 9) + g.pick(suffixes));
  for (const auto& e : lex.all_entries()) {
    for (const auto& s : suffixes) words.push_back(e.lemma + s);
  }
  for (const auto& w : words) {
    const std::string once = lemmatizer.lemmatize(w);
    EXPECT_EQ(lemmatizer.lemmatize(once), once) << w;
    const std::string known_once = lemmatizer.lemmatize(w, known);
    EXPECT_EQ(lemmatizer.lemmatize(known_once, known), known_once) << w;
  }
}

TEST(Lexicon, DerivativeLevels) {
  const auto load = parse("consideration\tn\t3\nconsiderate\tadj\t5\nconsider\tv\t2\n");
  EXPECT_EQ(load.lexicon.level("considerate"), 5);
  EXPECT_EQ(load.lexicon.level("consideration"), 3);
  EXPECT_EQ(load.lexicon.level("considered"), 2);
  EXPECT_FALSE(load.lexicon.lookup("zzzz").has_value());
  EXPECT_FALSE(load.lexicon.level("zzzz").has_value());
}

TEST(Lexicon, LowestLevelAcrossPosRows) {
  const auto load = parse("record\tn\t3\nrecord\tv\t2\n");
  const auto hit = load.lexicon.lookup("records");
  ASSERT_TRUE(hit.has_value());
  EXPECT_EQ(hit->level, 2);
  EXPECT_EQ(hit->pos, (PosSet{Pos::kNoun, Pos::kVerb}));
  EXPECT_EQ(hit->lemma, "record");
  EXPECT_EQ(load.lexicon.size(), 2u);
  EXPECT_EQ(load.lexicon.lemma_count(), 1u);
}

TEST(Lexicon, LyAdverbsInheritAdjectiveLevel) {
  const auto load = parse("quick\tadj\t1\nhappy\tadj\t2\nbasic\tadj\t3\ngentle\tadj\t4\ncareful\tadj\t2\nrun\tv\t1\n");
  const auto& lex = load.lexicon;
  for (auto [word, base, level] : std::vector<std::tuple<const char*, const char*, int>>{
           {"quickly", "quick", 1}, {"happily", "happy", 2}, {"basically", "basic", 3},
           {"gently", "gentle", 4}, {"carefully", "careful", 2}}) {
    const auto hit = lex.lookup(word);
    ASSERT_TRUE(hit.has_value()) << word;
    EXPECT_EQ(hit->level, level) << word;
    EXPECT_EQ(hit->pos, PosSet{Pos::kAdv}) << word;
    EXPECT_EQ(hit->lemma, base) << word;
  }
  EXPECT_FALSE(lex.lookup("runly").has_value());
}

TEST(Lexicon, EveryFixtureWordIsItsOwnLemma) {
  const auto& lex = issr::testing::fixture_lexicon();
  EXPECT_GT(lex.lemma_count(), 200u);
  for (const auto& e : lex.all_entries()) EXPECT_EQ(lex.lemmatize(e.lemma), e.lemma);
}

TEST(Lexicon, LookupMatchesLookupOfLemmaProperty) {
  const auto& lex = issr::testing::fixture_lexicon();
  Gen g(8);
  const std::vector<std::string> suffixes = {"", "s", "es", "ed", "ing", "ly", "ies"};
  std::vector<std::string> words;
  for (const auto& e : lex.all_entries()) words.push_back(e.lemma + g.pick(suffixes));
  for (int i = 0; i < 500; ++i) words.push_back(g.word(2, 8) + g.pick(suffixes));
  for (const auto& w : words) EXPECT_EQ(lex.lookup(w), lex.lookup(lex.lemmatize(w))) << w;
}

TEST(Lexicon, AddRejectsBadEntries) {
  Lexicon lex;
  EXPECT_TRUE(lex.add({"cat", Pos::kNoun, 1}));
  EXPECT_FALSE(lex.add({"cat", Pos::kNoun, 2}));
  EXPECT_TRUE(lex.add({"cat", Pos::kVerb, 6}));
  EXPECT_FALSE(lex.add({"dog", Pos::kNoun, 0}));
  EXPECT_FALSE(lex.add({"dog", Pos::kNoun, 7}));
  EXPECT_FALSE(lex.add({"hot dog", Pos::kNoun, 2}));
  EXPECT_EQ(lex.size(), 2u);
}

}  // namespace
}  // namespace issr::lexicon
