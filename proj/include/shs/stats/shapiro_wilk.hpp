#pragma once

// Shapiro-Wilk W test following Royston's AS R94 algorithm (complete samples,
// 3 <= n <= 5000). Coefficients use an exact normal quantile instead of the
// AS 111 approximation; otherwise the polynomial approximations are the
// published ones.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <numbers>
#include <span>
#include <vector>

#include "shs/error.hpp"
#include "shs/stats/special_functions.hpp"

namespace shs::stats {

struct ShapiroWilkResult {
  double w;
  double p_value;
  std::size_t n;
};

namespace detail {

inline double poly(std::initializer_list<double> coefficients, double x) {
  double result = 0.0;
  double power = 1.0;
  for (double c : coefficients) {
    result += c * power;
    power *= x;
  }
  return result;
}

/// Upper-half coefficients a_1..a_{n/2} (positive, largest first).
inline std::vector<double> shapiro_wilk_coefficients(std::size_t n) {
  const std::size_t half = n / 2;
  std::vector<double> a(half);
  if (n == 3) {
    a[0] = std::numbers::sqrt2 / 2.0;
    return a;
  }
  const double an = static_cast<double>(n);
  std::vector<double> m(half);
  double summ2 = 0.0;
  for (std::size_t i = 0; i < half; ++i) {
    m[i] = normal_quantile((static_cast<double>(i + 1) - 0.375) / (an + 0.25));
    summ2 += m[i] * m[i];
  }
  summ2 *= 2.0;
  const double ssumm2 = std::sqrt(summ2);
  const double rsn = 1.0 / std::sqrt(an);
  const double a1 = poly({0.0, 0.221157, -0.147981, -2.071190, 4.434685, -2.706056}, rsn) - m[0] / ssumm2;

  std::size_t first_scaled;
  double fac;
  if (n > 5) {
    first_scaled = 2;
    const double a2 = -m[1] / ssumm2 + poly({0.0, 0.042981, -0.293762, -1.752461, 5.682633, -3.582633}, rsn);
    fac = std::sqrt((summ2 - 2.0 * m[0] * m[0] - 2.0 * m[1] * m[1]) / (1.0 - 2.0 * a1 * a1 - 2.0 * a2 * a2));
    a[0] = a1;
    a[1] = a2;
  } else {
    first_scaled = 1;
    fac = std::sqrt((summ2 - 2.0 * m[0] * m[0]) / (1.0 - 2.0 * a1 * a1));
    a[0] = a1;
  }
  for (std::size_t i = first_scaled; i < half; ++i) a[i] = -m[i] / fac;
  return a;
}

}  // namespace detail

inline ShapiroWilkResult shapiro_wilk(std::span<const double> sample) {
  const std::size_t n = sample.size();
  if (n < 3 || n > 5000) throw StatisticError("Shapiro-Wilk requires 3 <= n <= 5000");
  std::vector<double> x(sample.begin(), sample.end());
  std::sort(x.begin(), x.end());
  const double range = x.back() - x.front();
  if (!(range > 0.0)) throw StatisticError("Shapiro-Wilk undefined for a constant sample");

  const std::vector<double> a = detail::shapiro_wilk_coefficients(n);
  std::vector<double> coef(n, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    coef[i] = -a[i];
    coef[n - 1 - i] = a[i];
  }

  // W as the squared correlation between the ordered sample and the
  // coefficients; 1 - W is formed directly to keep precision near W = 1.
  double sa = 0.0;
  double sx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sa += coef[i];
    sx += x[i] / range;
  }
  sa /= static_cast<double>(n);
  sx /= static_cast<double>(n);
  double ssa = 0.0;
  double ssx = 0.0;
  double sax = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double da = coef[i] - sa;
    const double dx = x[i] / range - sx;
    ssa += da * da;
    ssx += dx * dx;
    sax += da * dx;
  }
  const double ssassx = std::sqrt(ssa * ssx);
  const double w1 = std::max(0.0, (ssassx - sax) * (ssassx + sax) / (ssa * ssx));
  const double w = 1.0 - w1;

  if (n == 3) {
    const double p = 6.0 / std::numbers::pi * (std::asin(std::sqrt(w)) - std::numbers::pi / 3.0);
    return {w, std::clamp(p, 0.0, 1.0), n};
  }

  double y = std::log(w1);
  const double an = static_cast<double>(n);
  const double log_n = std::log(an);
  double mu;
  double sigma;
  if (n <= 11) {
    const double gamma = detail::poly({-2.273, 0.459}, an);
    if (y >= gamma) return {w, 1e-19, n};
    y = -std::log(gamma - y);
    mu = detail::poly({0.5440, -0.39978, 0.025054, -6.714e-4}, an);
    sigma = std::exp(detail::poly({1.3822, -0.77857, 0.062767, -0.0020322}, an));
  } else {
    mu = detail::poly({-1.5861, -0.31082, -0.083751, 0.0038915}, log_n);
    sigma = std::exp(detail::poly({-0.4803, -0.082676, 0.0030302}, log_n));
  }
  return {w, normal_upper_tail((y - mu) / sigma), n};
}

}  // namespace shs::stats
