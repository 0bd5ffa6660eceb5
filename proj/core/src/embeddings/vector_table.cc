#include "issr/embeddings/vector_table.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>

#include "issr/core/blank.h"
#include "issr/core/error.h"

namespace issr::embeddings {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

// Splits on spaces/tabs without allocating per token.
void tokenize(std::string_view line, std::vector<std::string_view>& out) {
  out.clear();
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    const std::size_t start = i;
    while (i < line.size() && !is_space(line[i])) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
}

bool is_integer(std::string_view s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

double norm_of(std::span<const float> v) {
  double sum = 0.0;
  for (float x : v) sum += static_cast<double>(x) * static_cast<double>(x);
  return std::sqrt(sum);
}

}  // namespace

bool VectorTable::insert(std::string word, std::span<const float> values) {
  if (dim_ == 0) dim_ = values.size();
  if (values.size() != dim_ || dim_ == 0) {
    throw Error(ErrorCode::kDimensionMismatch, "vector for '" + word + "' has " + std::to_string(values.size()) +
                                                   " components, table dim is " + std::to_string(dim_));
  }
  for (float x : values) {
    if (!std::isfinite(x)) throw Error(ErrorCode::kParse, "non-finite component in vector for '" + word + "'");
  }
  if (index_.contains(word)) return false;
  index_.emplace(std::move(word), norms_.size());
  data_.insert(data_.end(), values.begin(), values.end());
  norms_.push_back(norm_of(values));
  return true;
}

VectorTable VectorTable::load(std::istream& source) {
  VectorTable table;
  std::string line;
  std::vector<std::string_view> tokens;
  std::vector<float> values;
  int line_no = 0;
  bool first_data_line = true;

  while (std::getline(source, line)) {
    ++line_no;
    tokenize(line, tokens);
    if (tokens.empty()) continue;
    if (first_data_line && tokens.size() == 2 && is_integer(tokens[0]) && is_integer(tokens[1])) {
      first_data_line = false;
      continue;
    }
    first_data_line = false;
    if (tokens.size() < 2) {
      throw Error(ErrorCode::kDimensionMismatch, "line " + std::to_string(line_no) + ": no vector components");
    }
    const std::size_t d = tokens.size() - 1;
    if (table.dim_ != 0 && d != table.dim_) {
      throw Error(ErrorCode::kDimensionMismatch, "line " + std::to_string(line_no) + ": expected " +
                                                     std::to_string(table.dim_) + " components, got " +
                                                     std::to_string(d));
    }
    values.resize(d);
    for (std::size_t i = 0; i < d; ++i) {
      const auto tok = tokens[i + 1];
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), values[i]);
      if (ec != std::errc() || ptr != tok.data() + tok.size() || !std::isfinite(values[i])) {
        throw Error(ErrorCode::kParse, "line " + std::to_string(line_no) + ": bad component '" +
                                           std::string(tok) + "'");
      }
    }
    table.insert(std::string(tokens[0]), values);
  }

  if (table.size() == 0) throw Error(ErrorCode::kEmptyFile, "vector file has no vectors");
  return table;
}

VectorTable VectorTable::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open vector file " + path);
  return load(in);
}

std::optional<std::size_t> VectorTable::slot(std::string_view word, const LemmaFn& lemma) const {
  if (auto it = index_.find(std::string(word)); it != index_.end()) return it->second;
  const std::string lower = to_lower(word);
  if (auto it = index_.find(lower); it != index_.end()) return it->second;
  if (lemma) {
    if (auto it = index_.find(lemma(lower)); it != index_.end()) return it->second;
  }
  return std::nullopt;
}

std::optional<std::span<const float>> VectorTable::find(std::string_view word, const LemmaFn& lemma) const {
  auto s = slot(word, lemma);
  if (!s) return std::nullopt;
  return std::span<const float>(data_.data() + *s * dim_, dim_);
}

std::optional<double> VectorTable::cosine(std::string_view a, std::string_view b, const LemmaFn& lemma) const {
  const auto sa = slot(a, lemma);
  const auto sb = slot(b, lemma);
  if (!sa || !sb) return std::nullopt;
  const double na = norms_[*sa];
  const double nb = norms_[*sb];
  if (na == 0.0 || nb == 0.0) return std::nullopt;
  const float* va = data_.data() + *sa * dim_;
  const float* vb = data_.data() + *sb * dim_;
  double dot = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) dot += static_cast<double>(va[i]) * static_cast<double>(vb[i]);
  return std::clamp(dot / (na * nb), -1.0, 1.0);
}

}  // namespace issr::embeddings
