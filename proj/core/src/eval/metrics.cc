#include "issr/eval/metrics.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "issr/core/error.h"

namespace issr::eval {

namespace {

void check(std::span<const std::string> gold, int k) {
  if (gold.empty()) throw Error(ErrorCode::kEmptyGold, "metric needs at least one gold distractor");
  if (k < 1) throw Error(ErrorCode::kInvalidConfig, "metric cutoff k must be >= 1");
}

// rel[i] for the first min(k, |generated|) positions; repeats score 0.
std::vector<int> relevance(std::span<const std::string> generated, std::span<const std::string> gold, int k) {
  const std::set<std::string> gold_set(gold.begin(), gold.end());
  std::set<std::string> seen;
  const std::size_t n = std::min(generated.size(), static_cast<std::size_t>(k));
  std::vector<int> rel(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& w = generated[i];
    if (gold_set.contains(w) && seen.insert(w).second) rel[i] = 1;
  }
  return rel;
}

}  // namespace

int hits_at_k(std::span<const std::string> generated, std::span<const std::string> gold, int k) {
  check(gold, k);
  const auto rel = relevance(generated, gold, k);
  return static_cast<int>(std::count(rel.begin(), rel.end(), 1));
}

double f1_at_k(std::span<const std::string> generated, std::span<const std::string> gold, int k) {
  const int hits = hits_at_k(generated, gold, k);
  if (hits == 0) return 0.0;
  const std::set<std::string> gold_set(gold.begin(), gold.end());
  const double precision = static_cast<double>(hits) / k;
  const double recall = static_cast<double>(hits) / static_cast<double>(gold_set.size());
  return 2.0 * precision * recall / (precision + recall);
}

double ndcg_at_k(std::span<const std::string> generated, std::span<const std::string> gold, int k) {
  check(gold, k);
  const auto rel = relevance(generated, gold, k);
  double dcg = 0.0;
  for (std::size_t i = 0; i < rel.size(); ++i) {
    if (rel[i] != 0) dcg += 1.0 / std::log2(static_cast<double>(i) + 2.0);
  }
  const std::set<std::string> gold_set(gold.begin(), gold.end());
  const std::size_t ideal = std::min(gold_set.size(), static_cast<std::size_t>(k));
  double idcg = 0.0;
  for (std::size_t i = 0; i < ideal; ++i) idcg += 1.0 / std::log2(static_cast<double>(i) + 2.0);
  return dcg / idcg;
}

}  // namespace issr::eval
