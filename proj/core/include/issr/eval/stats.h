#pragma once

#include <cstddef>
#include <span>

namespace issr::eval {

struct PearsonResult {
  double r = 0.0;
  // Two-sided, from Student's t with n - 2 degrees of freedom. NaN for n = 2.
  double p_value = 0.0;
  std::size_t n = 0;
};

// Throws Error(kLengthMismatch) unless |x| = |y| >= 2 and
// Error(kZeroVariance) when either side is constant.
PearsonResult pearson(std::span<const double> x, std::span<const double> y);

struct Summary {
  std::size_t n = 0;
  double mean = 0.0;
  double std = 0.0;
};

// Population standard deviation unless `sample` is set. Empty input gives n = 0.
Summary describe(std::span<const double> values, bool sample = false);

}  // namespace issr::eval
