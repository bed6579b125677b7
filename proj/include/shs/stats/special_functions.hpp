#pragma once

// Distribution functions used by the test statistics. Everything is built on
// the regularized incomplete beta and gamma functions, evaluated with
// series / Lentz continued fractions, and inverted with safeguarded Newton
// iterations. Target absolute accuracy is 1e-8 or better throughout.

#include <cmath>
#include <algorithm>
#include <limits>
#include <numbers>

#include "shs/error.hpp"

namespace shs::stats {

namespace detail {

inline constexpr double kEps = 1e-16;
inline constexpr double kTiny = 1e-300;
inline constexpr int kMaxIterations = 100000;

inline double log_beta(double a, double b) { return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b); }

// Continued fraction for I_x(a, b); converges for x < (a + 1) / (a + b + 2).
inline double beta_continued_fraction(double a, double b, double x) {
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) return h;
  }
  throw StatisticError("incomplete beta continued fraction did not converge");
}

// Safeguarded Newton on a monotone increasing cdf over [lo, hi].
template <typename Cdf, typename Pdf>
double invert_monotone(double p, double lo, double hi, double start, Cdf cdf, Pdf pdf) {
  double x = start;
  if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);
  for (int iter = 0; iter < 400; ++iter) {
    const double f = cdf(x) - p;
    if (f == 0.0) return x;
    if (f < 0.0) {
      lo = x;
    } else {
      hi = x;
    }
    const double dens = pdf(x);
    double next = (dens > 0.0 && std::isfinite(dens)) ? x - f / dens : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == x || hi - lo <= 2.0 * std::numeric_limits<double>::epsilon() * std::fabs(x)) {
      return next;
    }
    x = next;
  }
  return x;
}

}  // namespace detail

/// Regularized incomplete beta I_x(a, b).
inline double regularized_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) throw DomainError("regularized_beta requires a, b > 0");
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("regularized_beta requires x in [0, 1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double front = std::exp(a * std::log(x) + b * std::log1p(-x) - detail::log_beta(a, b));
  if (x < (a + 1.0) / (a + b + 2.0)) return front * detail::beta_continued_fraction(a, b, x) / a;
  return 1.0 - front * detail::beta_continued_fraction(b, a, 1.0 - x) / b;
}

inline double beta_density(double a, double b, double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  return std::exp((a - 1.0) * std::log(x) + (b - 1.0) * std::log1p(-x) - detail::log_beta(a, b));
}

inline double inverse_regularized_beta(double p, double a, double b) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("probability outside [0, 1]");
  if (p == 0.0) return 0.0;
  if (p == 1.0) return 1.0;
  return detail::invert_monotone(
      p, 0.0, 1.0, a / (a + b), [&](double x) { return regularized_beta(a, b, x); },
      [&](double x) { return beta_density(a, b, x); });
}

/// Regularized lower incomplete gamma P(a, x).
inline double regularized_gamma_p(double a, double x);

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
inline double regularized_gamma_q(double a, double x) {
  if (!(a > 0.0)) throw DomainError("regularized_gamma requires a > 0");
  if (!(x >= 0.0)) throw DomainError("regularized_gamma requires x >= 0");
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - regularized_gamma_p(a, x);
  // Lentz continued fraction for Q.
  const double gln = std::lgamma(a);
  double b = x + 1.0 - a;
  double c = 1.0 / detail::kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= detail::kMaxIterations; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < detail::kTiny) d = detail::kTiny;
    c = b + an / c;
    if (std::fabs(c) < detail::kTiny) c = detail::kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < detail::kEps) return std::exp(-x + a * std::log(x) - gln) * h;
  }
  throw StatisticError("incomplete gamma continued fraction did not converge");
}

inline double regularized_gamma_p(double a, double x) {
  if (!(a > 0.0)) throw DomainError("regularized_gamma requires a > 0");
  if (!(x >= 0.0)) throw DomainError("regularized_gamma requires x >= 0");
  if (x == 0.0) return 0.0;
  if (x >= a + 1.0) return 1.0 - regularized_gamma_q(a, x);
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int n = 1; n <= detail::kMaxIterations; ++n) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::fabs(del) < std::fabs(sum) * detail::kEps) {
      return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
    }
  }
  throw StatisticError("incomplete gamma series did not converge");
}

// -- normal ------------------------------------------------------------------

inline double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

inline double normal_upper_tail(double z) { return 0.5 * std::erfc(z / std::numbers::sqrt2); }

inline double normal_density(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi); }

/// Inverse standard normal CDF: Acklam's rational approximation polished with
/// one Halley step against erfc (full double precision).
inline double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    if (p == 0.0) return -std::numeric_limits<double>::infinity();
    if (p == 1.0) return std::numeric_limits<double>::infinity();
    throw DomainError("normal_quantile requires p in [0, 1]");
  }
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
                                 1.383577518672690e+02, -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
                                 6.680131188771972e+01, -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
                                 -2.549732539343734e+00, 4.374664141464968e+00, 2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
                                 3.754408661907416e+00};
  constexpr double p_low = 0.02425;
  double x;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - p_low) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log1p(-p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double e = normal_cdf(x) - p;
  const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
  return x - u / (1.0 + 0.5 * x * u);
}

// -- Student t -----------------------------------------------------------------

inline double student_t_cdf(double t, double df) {
  if (!(df > 0.0)) throw DomainError("t distribution requires df > 0");
  if (std::isinf(t)) return t > 0 ? 1.0 : 0.0;
  const double tail = 0.5 * regularized_beta(0.5 * df, 0.5, df / (df + t * t));
  return t > 0.0 ? 1.0 - tail : tail;
}

/// P(|T| >= |t|).
inline double student_t_two_sided(double t, double df) {
  if (!(df > 0.0)) throw DomainError("t distribution requires df > 0");
  if (std::isinf(t)) return 0.0;
  return regularized_beta(0.5 * df, 0.5, df / (df + t * t));
}

// -- F -----------------------------------------------------------------------

inline double f_cdf(double f, double df1, double df2) {
  if (!(df1 > 0.0) || !(df2 > 0.0)) throw DomainError("F distribution requires positive degrees of freedom");
  if (f <= 0.0) return 0.0;
  if (std::isinf(f)) return 1.0;
  return regularized_beta(0.5 * df1, 0.5 * df2, df1 * f / (df1 * f + df2));
}

/// Value q such that P(F <= q) = p.
inline double f_quantile(double p, double df1, double df2) {
  if (!(df1 > 0.0) || !(df2 > 0.0)) throw DomainError("F distribution requires positive degrees of freedom");
  if (!(p > 0.0 && p < 1.0)) {
    if (p == 0.0) return 0.0;
    if (p == 1.0) return std::numeric_limits<double>::infinity();
    throw DomainError("probability outside [0, 1]");
  }
  const double x = inverse_regularized_beta(p, 0.5 * df1, 0.5 * df2);
  return df2 * x / (df1 * (1.0 - x));
}

// -- chi-square --------------------------------------------------------------

inline double chi_square_cdf(double x, double df) {
  if (!(df > 0.0)) throw DomainError("chi-square requires df > 0");
  if (x <= 0.0) return 0.0;
  return regularized_gamma_p(0.5 * df, 0.5 * x);
}

/// Upper tail P(X >= x).
inline double chi_square_sf(double x, double df) {
  if (!(df > 0.0)) throw DomainError("chi-square requires df > 0");
  if (x <= 0.0) return 1.0;
  return regularized_gamma_q(0.5 * df, 0.5 * x);
}

inline double chi_square_quantile(double p, double df) {
  if (!(df > 0.0)) throw DomainError("chi-square requires df > 0");
  if (!(p > 0.0 && p < 1.0)) {
    if (p == 0.0) return 0.0;
    if (p == 1.0) return std::numeric_limits<double>::infinity();
    throw DomainError("probability outside [0, 1]");
  }
  double hi = std::max(1.0, df);
  while (chi_square_cdf(hi, df) < p) hi *= 2.0;
  const double k = 0.5 * df;
  return detail::invert_monotone(
      p, 0.0, hi, df, [&](double x) { return chi_square_cdf(x, df); },
      [&](double x) {
        if (x <= 0.0) return 0.0;
        return std::exp((k - 1.0) * std::log(x) - 0.5 * x - k * std::numbers::ln2 - std::lgamma(k));
      });
}

}  // namespace shs::stats
