#pragma once

#include <functional>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace issr::embeddings {

// Maps a surface form to its lemma for the fallback lookup.
using LemmaFn = std::function<std::string(std::string_view)>;

/// Word vectors in the plain-text distribution format: one `word v1 ... vd`
/// per line, space separated. An optional word2vec-style `count dim` header
/// line is skipped. Immutable once loaded.
class VectorTable {
 public:
  VectorTable() = default;
  explicit VectorTable(std::size_t dim) : dim_(dim) {}

  // Throws Error(kEmptyFile) when no vectors are present and
  // Error(kDimensionMismatch) naming the first inconsistent line.
  static VectorTable load(std::istream& source);
  static VectorTable load_file(const std::string& path);

  // Returns false when the word already exists. Throws on a wrong length or
  // non-finite component.
  bool insert(std::string word, std::span<const float> values);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return index_.size(); }

  // Exact word, then lowercase, then lemma (when `lemma` is given).
  std::optional<std::span<const float>> find(std::string_view word, const LemmaFn& lemma = {}) const;

  // dot(a,b) / (|a||b|), clamped to [-1, 1]. std::nullopt when a word is
  // missing or has a zero vector.
  std::optional<double> cosine(std::string_view a, std::string_view b, const LemmaFn& lemma = {}) const;

 private:
  std::optional<std::size_t> slot(std::string_view word, const LemmaFn& lemma) const;

  std::size_t dim_ = 0;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<float> data_;
  std::vector<double> norms_;
};

}  // namespace issr::embeddings
