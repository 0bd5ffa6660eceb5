#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

#include <nlohmann/json.hpp>

#include "issr/core/blank.h"
#include "issr/core/config.h"
#include "issr/core/dataset.h"
#include "issr/core/error.h"
#include "issr/core/hash.h"
#include "issr/core/json.h"
#include "test_support.h"

namespace issr {
namespace {

using testing::Gen;

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no issr::Error thrown";
  return ErrorCode::kIo;
}

TEST(Blank, LongMarkerUnchanged) {
  EXPECT_EQ(normalize_blank("a strong Irish _____; he must"), "a strong Irish _____; he must");
}

TEST(Blank, ShortRunCanonicalized) {
  EXPECT_EQ(normalize_blank("sale of their ___ tickets"), "sale of their _____ tickets");
  EXPECT_EQ(normalize_blank("x __________ y"), "x _____ y");
}

TEST(Blank, Errors) {
  EXPECT_EQ(code_of([] { normalize_blank("no blank here"); }), ErrorCode::kNoBlank);
  EXPECT_EQ(code_of([] { normalize_blank("snake__case only"); }), ErrorCode::kNoBlank);
  EXPECT_EQ(code_of([] { normalize_blank("___ and ____"); }), ErrorCode::kMultipleBlanks);
}

TEST(Blank, NormalizeIsIdempotent) {
  Gen g(11);
  for (int i = 0; i < 500; ++i) {
    std::string stem = g.word(0, 8) + " " + std::string(static_cast<std::size_t>(g.between(3, 12)), '_') + " " +
                       g.word(0, 8);
    if (g.chance(0.3)) stem += "__";
    const std::string once = normalize_blank(stem);
    EXPECT_EQ(normalize_blank(once), once) << stem;
    EXPECT_EQ(once.find("______"), std::string::npos);
  }
}

TEST(Blank, Fill) {
  EXPECT_EQ(fill_blank("sale of their _____ tickets", "concert"), "sale of their concert tickets");
  EXPECT_EQ(code_of([] { fill_blank("nothing", "x"); }), ErrorCode::kNoBlank);
}

TEST(Blank, SingleWord) {
  for (const char* w : {"journey", "well-known", "o'clock", "Traffic"}) EXPECT_TRUE(is_single_word(w)) << w;
  for (const char* w : {"", "on standby", "mp3", "--", "rock\tband", "x_y"}) EXPECT_FALSE(is_single_word(w)) << w;
}

TEST(Hash, KnownValues) {
  EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
  EXPECT_EQ(hex64(0xabcULL), "0000000000000abc");
  std::uint64_t s = 0;
  EXPECT_EQ(splitmix64(s), 0xe220a8397b1dcdafULL);
  EXPECT_EQ(splitmix64(s), 0x6e789e6aa1b965f4ULL);
}

QuestionItem random_item(Gen& g, int n) {
  QuestionItem item;
  item.id = "item-" + std::to_string(n);
  item.stem = g.word(1, 6) + " " + std::string(kBlankMarker) + " " + g.word(1, 6) + ".";
  item.answer = g.word(3, 9);
  if (g.chance(0.8)) {
    while (item.gold_distractors.size() < 3) {
      std::string w = g.word(3, 9);
      if (w != item.answer && std::find(item.gold_distractors.begin(), item.gold_distractors.end(), w) ==
                                  item.gold_distractors.end()) {
        item.gold_distractors.push_back(w);
      }
    }
  }
  if (g.chance(0.5)) {
    std::map<std::string, double> rates;
    for (const auto& d : item.gold_distractors) rates[d] = g.between(0, 30) / 100.0;
    item.selection_rates = rates;
  }
  if (g.chance(0.5)) item.pass_rate = g.between(0, 100) / 100.0;
  return item;
}

TEST(Dataset, RoundTripProperty) {
  Gen g(5);
  for (int i = 0; i < 300; ++i) {
    const QuestionItem item = random_item(g, i);
    ASSERT_NO_THROW(item.validate());
    EXPECT_EQ(parse_item(serialize_item(item)), item) << serialize_item(item);
  }
}

TEST(Dataset, ReadsJsonLines) {
  std::istringstream in(
      R"({"id":"a","stem":"The ___ sat.","answer":"Cat","distractors":["dog","Cow","pig"],"pass_rate":0.5})"
      "\n\n"
      R"({"id":"b","stem":"A _____ day.","answer":"sunny","distractors":[]})"
      "\n");
  const auto items = read_dataset(in);
  ASSERT_EQ(items.size(), 2u);
  EXPECT_EQ(items[0].stem, "The _____ sat.");
  EXPECT_EQ(items[0].answer, "cat");
  EXPECT_EQ(items[0].gold_distractors, (std::vector<std::string>{"dog", "cow", "pig"}));
  EXPECT_EQ(items[0].pass_rate, 0.5);
  EXPECT_TRUE(items[1].gold_distractors.empty());
  EXPECT_FALSE(items[1].pass_rate.has_value());
}

TEST(Dataset, ErrorsNameTheLine) {
  std::istringstream in(R"({"id":"a","stem":"The ___ sat.","answer":"cat","distractors":[]})"
                        "\n{not json\n");
  try {
    read_dataset(in);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParse);
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
}

TEST(Dataset, InvalidItems) {
  auto parse = [](const char* line) { return [line] { parse_item(line); }; };
  EXPECT_EQ(code_of(parse(R"({"id":"a","stem":"x ___ y","answer":"cat","distractors":["cat","b","c"]})")),
            ErrorCode::kInvalidItem);
  EXPECT_EQ(code_of(parse(R"({"id":"a","stem":"x ___ y","answer":"cat","distractors":["a","b"]})")),
            ErrorCode::kInvalidItem);
  EXPECT_EQ(code_of(parse(R"({"id":"a","stem":"x ___ y","answer":"ice cream","distractors":[]})")),
            ErrorCode::kInvalidItem);
  EXPECT_EQ(code_of(parse(R"({"id":"a","stem":"x ___ y","answer":"cat","distractors":[],"pass_rate":1.5})")),
            ErrorCode::kInvalidItem);
  EXPECT_EQ(code_of(parse(R"({"id":"a","stem":"no blank","answer":"cat","distractors":[]})")), ErrorCode::kNoBlank);
}

TEST(Config, DefaultsAreValid) {
  PipelineConfig c;
  EXPECT_NO_THROW(c.validate());
  EXPECT_EQ(c.fetch_size(), 200);
}

TEST(Config, Invariants) {
  auto invalid = [](auto mutate) {
    PipelineConfig c;
    mutate(c);
    return code_of([&] { c.validate(); }) == ErrorCode::kInvalidConfig;
  };
  EXPECT_TRUE(invalid([](PipelineConfig& c) { c.k_per_round = 51; }));
  EXPECT_TRUE(invalid([](PipelineConfig& c) { c.target_count = 51; }));
  EXPECT_TRUE(invalid([](PipelineConfig& c) { c.max_rounds = 9; }));
  EXPECT_TRUE(invalid([](PipelineConfig& c) { c.temperature = -0.1; }));
  EXPECT_TRUE(invalid([](PipelineConfig& c) { c.pool_cap = 0; }));
  PipelineConfig ok;
  ok.max_rounds = 10;
  EXPECT_NO_THROW(ok.validate());
}

TEST(Config, ApplySetting) {
  PipelineConfig c;
  apply_setting(c, "pool_cap", "80");
  apply_setting(c, "validator_strategy", "s1");
  apply_setting(c, "temperature", "0.25");
  apply_setting(c, "parallel_validation", "true");
  apply_setting(c, "seed", "18446744073709551615");
  EXPECT_EQ(c.pool_cap, 80);
  EXPECT_EQ(c.validator_strategy, ValidatorStrategy::kS1Independent);
  EXPECT_DOUBLE_EQ(c.temperature, 0.25);
  EXPECT_TRUE(c.parallel_validation);
  EXPECT_EQ(c.seed, 18446744073709551615ULL);
  EXPECT_EQ(code_of([&] { apply_setting(c, "pool_size", "3"); }), ErrorCode::kInvalidConfig);
  EXPECT_EQ(code_of([&] { apply_setting(c, "k_per_round", "three"); }), ErrorCode::kInvalidConfig);
  EXPECT_EQ(code_of([&] { apply_setting(c, "k_per_round", "3x"); }), ErrorCode::kInvalidConfig);
}

TEST(Config, EveryKeyRoundTripsThroughJson) {
  PipelineConfig c;
  c.pool_cap = 60;
  c.validator_strategy = ValidatorStrategy::kS2Consistency;
  c.seed = 99;
  const nlohmann::json j = c;
  EXPECT_EQ(j.size(), config_keys().size());
  EXPECT_EQ(j.get<PipelineConfig>(), c);
}

TEST(Config, KeyValueFile) {
  testing::TempDir dir;
  {
    std::ofstream out(dir / "run.conf");
    out << "# comment\n\npool_cap = 70\nvalidator_strategy = \"s2\"\n";
  }
  const auto kv = read_key_value_file(dir / "run.conf");
  ASSERT_EQ(kv.size(), 2u);
  EXPECT_EQ(kv.at("pool_cap"), "70");
  EXPECT_EQ(kv.at("validator_strategy"), "s2");
}

TEST(Types, StrategyNames) {
  EXPECT_EQ(parse_strategy("S3"), ValidatorStrategy::kS3Binary);
  EXPECT_EQ(parse_strategy("s2"), ValidatorStrategy::kS2Consistency);
  EXPECT_EQ(parse_strategy(to_string(ValidatorStrategy::kS1Independent)), ValidatorStrategy::kS1Independent);
  EXPECT_FALSE(parse_strategy("s4").has_value());
}

TEST(Types, OnlyThreeReasonsAreValid) {
  const std::vector<VerdictReason> all = {
      VerdictReason::kChoseTarget,    VerdictReason::kChoseDistractor, VerdictReason::kBothGood,
      VerdictReason::kMeaningSame,    VerdictReason::kMeaningDiffers,  VerdictReason::kJudgedSuitable,
      VerdictReason::kJudgedUnsuitable, VerdictReason::kParseFailure};
  int valid = 0;
  for (auto r : all) {
    const Verdict v = Verdict::make("x", ValidatorStrategy::kS3Binary, r, "");
    EXPECT_EQ(v.valid, is_valid_reason(r));
    valid += v.valid ? 1 : 0;
    EXPECT_EQ(parse_verdict_reason(to_string(r)), r);
  }
  EXPECT_EQ(valid, 3);
}

TEST(Types, PosSet) {
  PosSet s{Pos::kVerb, Pos::kNoun};
  EXPECT_EQ(s.to_string(), "n,v");
  EXPECT_TRUE(s.intersects(PosSet{Pos::kNoun}));
  EXPECT_FALSE(s.intersects(PosSet{Pos::kAdj}));
  EXPECT_EQ(parse_pos_code("adj"), Pos::kAdj);
  EXPECT_FALSE(parse_pos_code("noun").has_value());
}

TEST(Types, ErrorNamesAreStable) {
  EXPECT_EQ(to_string(ErrorCode::kNoBlank), "NoBlank");
  EXPECT_EQ(to_string(ErrorCode::kStaleRevision), "StaleRevision");
}

}  // namespace
}  // namespace issr
