#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "shs/error.hpp"

namespace shs::stats {

// All summations run left to right over the input order.

inline double mean(std::span<const double> x) {
  if (x.empty()) throw StatisticError("mean of empty series");
  double sum = 0.0;
  for (double v : x) sum += v;
  return sum / static_cast<double>(x.size());
}

/// Sample variance (N - 1 denominator), two-pass.
inline double sample_variance(std::span<const double> x) {
  if (x.size() < 2) throw StatisticError("variance needs at least 2 observations");
  const double m = mean(x);
  double ss = 0.0;
  for (double v : x) ss += (v - m) * (v - m);
  return ss / static_cast<double>(x.size() - 1);
}

inline bool is_constant(std::span<const double> x) {
  return std::all_of(x.begin(), x.end(), [&](double v) { return v == x.front(); });
}

inline double median(std::span<const double> x) {
  if (x.empty()) throw StatisticError("median of empty series");
  std::vector<double> sorted(x.begin(), x.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  if (n % 2 == 1) return sorted[n / 2];
  return 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
}

struct DescriptiveStats {
  std::size_t n = 0;
  double mean = 0.0;
  std::optional<double> sd;  // undefined for n == 1
  double median = 0.0;
  double min = 0.0;
  double max = 0.0;

  bool operator==(const DescriptiveStats&) const = default;
};

inline DescriptiveStats describe(std::span<const double> x) {
  if (x.empty()) throw StatisticError("describe: empty series");
  DescriptiveStats d;
  d.n = x.size();
  d.mean = mean(x);
  if (x.size() >= 2) d.sd = std::sqrt(sample_variance(x));
  d.median = median(x);
  const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
  d.min = *lo;
  d.max = *hi;
  return d;
}

struct Shape {
  double skewness;
  double excess_kurtosis;
};

/// Sample-adjusted Fisher-Pearson coefficients G1 and G2 (excess kurtosis,
/// zero for a normal population).
inline Shape skew_kurtosis(std::span<const double> x) {
  const std::size_t n = x.size();
  if (n < 4) throw StatisticError("skewness/kurtosis need at least 4 observations");
  if (is_constant(x)) throw StatisticError("skewness/kurtosis undefined for a constant series");
  const double m = mean(x);
  double m2 = 0.0;
  double m3 = 0.0;
  double m4 = 0.0;
  for (double v : x) {
    const double d = v - m;
    const double d2 = d * d;
    m2 += d2;
    m3 += d2 * d;
    m4 += d2 * d2;
  }
  const double nn = static_cast<double>(n);
  m2 /= nn;
  m3 /= nn;
  m4 /= nn;
  const double g1 = m3 / std::pow(m2, 1.5);
  const double g2 = m4 / (m2 * m2) - 3.0;
  const double skew = g1 * std::sqrt(nn * (nn - 1.0)) / (nn - 2.0);
  const double kurt = ((nn + 1.0) * g2 + 6.0) * (nn - 1.0) / ((nn - 2.0) * (nn - 3.0));
  return {skew, kurt};
}

}  // namespace shs::stats
