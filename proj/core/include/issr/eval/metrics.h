#pragma once

#include <span>
#include <string>

namespace issr::eval {

// A word repeated inside the top k counts once. Throws Error(kEmptyGold)
// for an empty gold list and Error(kInvalidConfig) for k < 1.
double f1_at_k(std::span<const std::string> generated, std::span<const std::string> gold, int k);

// Binary relevance, log2(i + 1) discount, ideal DCG over min(k, |gold|)
// positions.
double ndcg_at_k(std::span<const std::string> generated, std::span<const std::string> gold, int k);

// Distinct gold words among the first k generated words.
int hits_at_k(std::span<const std::string> generated, std::span<const std::string> gold, int k);

}  // namespace issr::eval
