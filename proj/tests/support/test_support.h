#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "issr/core/hash.h"
#include "issr/core/types.h"
#include "issr/lexicon/lexicon.h"
#include "issr/pipeline/candidates.h"

namespace issr::testing {

std::filesystem::path fixture(std::string_view relative);
std::string read_text(const std::filesystem::path& path);

// Loaded once from wordlist.tsv.
const lexicon::Lexicon& fixture_lexicon();

// Word -> tag map read from a JSON fixture; unknown words get an empty set.
pipeline::PosTagger tagger_from_fixture(const std::filesystem::path& path);

QuestionItem concert_item();
QuestionItem accent_item();

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(std::string_view name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

// Small seeded generator for property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() { return splitmix64(state_); }
  // Uniform in [lo, hi].
  int between(int lo, int hi) { return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1)); }
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  bool chance(double p) { return unit() < p; }

  template <typename T>
  const T& pick(const std::vector<T>& v) {
    return v[next() % v.size()];
  }

  std::string word(int min_len, int max_len);
  // Up to `count` entries of `from` in random order.
  std::vector<std::string> sample(const std::vector<std::string>& from, std::size_t count);

 private:
  std::uint64_t state_;
};

}  // namespace issr::testing
