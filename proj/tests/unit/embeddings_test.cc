#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "issr/core/error.h"
#include "issr/embeddings/vector_table.h"
#include "test_support.h"

namespace issr::embeddings {
namespace {

using issr::testing::Gen;

VectorTable load(const std::string& text) {
  std::istringstream in(text);
  return VectorTable::load(in);
}

ErrorCode load_error(const std::string& text) {
  try {
    load(text);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kIo;
}

TEST(Vectors, Cosine) {
  const auto t = load("a 1 1\nb 1 0\nc 0 1\nz 0 0\n");
  EXPECT_EQ(t.dim(), 2u);
  EXPECT_EQ(t.size(), 4u);
  EXPECT_NEAR(*t.cosine("a", "b"), 1.0 / std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(*t.cosine("a", "b"), 0.70711, 1e-5);
  EXPECT_NEAR(*t.cosine("b", "c"), 0.0, 1e-12);
  EXPECT_DOUBLE_EQ(*t.cosine("a", "a"), 1.0);
  EXPECT_FALSE(t.cosine("a", "z").has_value());
  EXPECT_FALSE(t.cosine("a", "missing").has_value());
}

TEST(Vectors, HeaderLineSkipped) {
  const auto t = load("2 3\nx 1 2 3\ny 3 2 1\n");
  EXPECT_EQ(t.size(), 2u);
  EXPECT_EQ(t.dim(), 3u);
}

TEST(Vectors, Errors) {
  EXPECT_EQ(load_error(""), ErrorCode::kEmptyFile);
  EXPECT_EQ(load_error("\n\n"), ErrorCode::kEmptyFile);
  EXPECT_EQ(load_error("a 1 2\nb 1 2 3\n"), ErrorCode::kDimensionMismatch);
  EXPECT_EQ(load_error("a\n"), ErrorCode::kDimensionMismatch);
  try {
    load("a 1 2\nb 1\n");
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
}

TEST(Vectors, LookupFallbacks) {
  const auto t = load("ticket 1 0\nCase 0 1\n");
  EXPECT_TRUE(t.find("ticket").has_value());
  EXPECT_TRUE(t.find("Case").has_value());
  EXPECT_TRUE(t.find("TICKET").has_value());
  EXPECT_FALSE(t.find("tickets").has_value());
  const LemmaFn lemma = [](std::string_view w) {
    return w.ends_with("s") ? std::string(w.substr(0, w.size() - 1)) : std::string(w);
  };
  EXPECT_TRUE(t.find("tickets", lemma).has_value());
  EXPECT_NEAR(*t.cosine("tickets", "ticket", lemma), 1.0, 1e-12);
}

TEST(Vectors, InsertRules) {
  VectorTable t(2);
  const float a[] = {1.0f, 2.0f};
  const float bad[] = {1.0f, 2.0f, 3.0f};
  const float nan[] = {1.0f, NAN};
  EXPECT_TRUE(t.insert("a", a));
  EXPECT_FALSE(t.insert("a", a));
  EXPECT_THROW(t.insert("b", bad), Error);
  EXPECT_THROW(t.insert("c", nan), Error);
  EXPECT_EQ(t.size(), 1u);
}

TEST(Vectors, SymmetryRangeAndScaleProperty) {
  Gen g(13);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t dim = static_cast<std::size_t>(g.between(1, 8));
    VectorTable base(dim);
    VectorTable scaled(dim);
    const double c = 0.01 + g.unit() * 100.0;
    std::vector<std::string> words;
    for (int i = 0; i < 12; ++i) {
      std::vector<float> v(dim);
      for (auto& x : v) x = static_cast<float>(g.between(-50, 50)) / 10.0f;
      const std::string w = "w" + std::to_string(i);
      base.insert(w, v);
      if (i == 0) {
        for (auto& x : v) x = static_cast<float>(x * c);
      }
      scaled.insert(w, v);
      words.push_back(w);
    }
    for (const auto& a : words) {
      for (const auto& b : words) {
        const auto ab = base.cosine(a, b);
        const auto ba = base.cosine(b, a);
        ASSERT_EQ(ab.has_value(), ba.has_value());
        if (!ab) continue;
        EXPECT_DOUBLE_EQ(*ab, *ba);
        EXPECT_GE(*ab, -1.0 - 1e-9);
        EXPECT_LE(*ab, 1.0 + 1e-9);
        const auto s = scaled.cosine(a, b);
        ASSERT_TRUE(s.has_value());
        EXPECT_NEAR(*s, *ab, 1e-6);
      }
    }
  }
}

}  // namespace
}  // namespace issr::embeddings
