#include "issr/eval/stats.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/distributions/students_t.hpp>

#include "issr/core/error.h"

namespace issr::eval {

PearsonResult pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw Error(ErrorCode::kLengthMismatch, "pearson needs two equal-length series of at least 2 values (got " +
                                                std::to_string(x.size()) + " and " + std::to_string(y.size()) + ")");
  }
  const auto n = x.size();
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) throw Error(ErrorCode::kZeroVariance, "pearson: a series has zero variance");

  PearsonResult out;
  out.n = n;
  out.r = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  if (n < 3) {
    out.p_value = std::numeric_limits<double>::quiet_NaN();
  } else if (std::abs(out.r) >= 1.0) {
    out.p_value = 0.0;
  } else {
    const double dof = static_cast<double>(n - 2);
    const double t = out.r * std::sqrt(dof / (1.0 - out.r * out.r));
    boost::math::students_t dist(dof);
    out.p_value = 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t)));
  }
  return out;
}

Summary describe(std::span<const double> values, bool sample) {
  Summary s;
  s.n = values.size();
  if (s.n == 0) return s;
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(s.n);
  double ss = 0.0;
  for (double v : values) ss += (v - s.mean) * (v - s.mean);
  const std::size_t denom = sample ? s.n - 1 : s.n;
  s.std = denom == 0 ? 0.0 : std::sqrt(ss / static_cast<double>(denom));
  return s;
}

}  // namespace issr::eval
