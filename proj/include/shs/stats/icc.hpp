#pragma once

#include <cmath>
#include <cstddef>
#include <optional>

#include "shs/error.hpp"
#include "shs/stats/matrix.hpp"
#include "shs/stats/reliability.hpp"
#include "shs/stats/special_functions.hpp"

namespace shs::stats {

enum class IccForm { single, average };

struct MeanSquares {
  double rows;   // between targets
  double cols;   // between raters
  double error;  // residual
};

/// Two-way ANOVA mean squares for a targets x raters table.
inline MeanSquares two_way_mean_squares(const DataMatrix& m) {
  const std::size_t n = m.rows();
  const std::size_t k = m.cols();
  std::vector<double> row_mean(n, 0.0);
  std::vector<double> col_mean(k, 0.0);
  double grand = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      row_mean[i] += m(i, j);
      col_mean[j] += m(i, j);
      grand += m(i, j);
    }
  }
  for (auto& v : row_mean) v /= static_cast<double>(k);
  for (auto& v : col_mean) v /= static_cast<double>(n);
  grand /= static_cast<double>(n * k);

  double ss_rows = 0.0;
  for (double v : row_mean) ss_rows += (v - grand) * (v - grand);
  ss_rows *= static_cast<double>(k);
  double ss_cols = 0.0;
  for (double v : col_mean) ss_cols += (v - grand) * (v - grand);
  ss_cols *= static_cast<double>(n);
  double ss_error = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      const double e = m(i, j) - row_mean[i] - col_mean[j] + grand;
      ss_error += e * e;
    }
  }
  const double dn = static_cast<double>(n);
  const double dk = static_cast<double>(k);
  return {ss_rows / (dn - 1.0), ss_cols / (dk - 1.0), ss_error / ((dn - 1.0) * (dk - 1.0))};
}

struct IccReport {
  double icc_single = 0.0;   // ICC(2,1)
  double icc_average = 0.0;  // ICC(2,k)
  std::optional<ConfidenceInterval> ci_single;
  std::optional<ConfidenceInterval> ci_average;
  std::size_t n_targets = 0;
  std::size_t n_raters = 0;
  bool degenerate = false;  // every cell equal; ICC reported as 1 by convention
  MeanSquares mean_squares{};

  double value(IccForm form) const { return form == IccForm::single ? icc_single : icc_average; }
  const std::optional<ConfidenceInterval>& ci(IccForm form) const {
    return form == IccForm::single ? ci_single : ci_average;
  }
};

/// Shrout-Fleiss two-way random-effects, absolute-agreement ICC(2,1) and
/// ICC(2,k). Intervals follow the F-based construction with Satterthwaite
/// degrees of freedom; the ICC(2,k) interval is the Spearman-Brown image of
/// the ICC(2,1) interval.
inline IccReport icc(const DataMatrix& ratings, double level = 0.95) {
  const std::size_t n = ratings.rows();
  const std::size_t k = ratings.cols();
  if (n < 2) throw StatisticError("ICC needs at least 2 targets");
  if (k < 2) throw StatisticError("ICC needs at least 2 raters");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      if (!std::isfinite(ratings(i, j))) throw StatisticError("ICC: missing or non-finite cell");
    }
  }

  IccReport out;
  out.n_targets = n;
  out.n_raters = k;
  const MeanSquares ms = two_way_mean_squares(ratings);
  out.mean_squares = ms;
  const double dn = static_cast<double>(n);
  const double dk = static_cast<double>(k);

  if (ms.rows == 0.0 && ms.cols == 0.0 && ms.error == 0.0) {
    out.icc_single = out.icc_average = 1.0;
    out.degenerate = true;
    out.ci_single = out.ci_average = ConfidenceInterval{1.0, 1.0};
    return out;
  }

  out.icc_single = (ms.rows - ms.error) / (ms.rows + (dk - 1.0) * ms.error + dk * (ms.cols - ms.error) / dn);
  out.icc_average = (ms.rows - ms.error) / (ms.rows + (ms.cols - ms.error) / dn);

  if (ms.error == 0.0 && ms.cols == 0.0) {
    out.ci_single = out.ci_average = ConfidenceInterval{1.0, 1.0};
    return out;
  }

  const double r = out.icc_single;
  const double fj = ms.cols / ms.error;
  const double a = dk * r * fj + dn * (1.0 + (dk - 1.0) * r) - dk * r;
  const double vn = (dk - 1.0) * (dn - 1.0) * a * a;
  const double b = dn * (1.0 + (dk - 1.0) * r) - dk * r;
  const double vd = (dn - 1.0) * dk * dk * r * r * fj * fj + b * b;
  const double v = vn / vd;
  if (!std::isfinite(v) || v <= 0.0 || r >= 1.0) return out;

  const double tail = 0.5 * (1.0 - level);
  const double f_low = f_quantile(1.0 - tail, dn - 1.0, v);
  const double f_high = f_quantile(1.0 - tail, v, dn - 1.0);
  const double c = dk * ms.cols + (dk * dn - dk - dn) * ms.error;
  const double low = dn * (ms.rows - f_low * ms.error) / (f_low * c + dn * ms.rows);
  const double high = dn * (f_high * ms.rows - ms.error) / (c + dn * f_high * ms.rows);
  if (!std::isfinite(low) || !std::isfinite(high)) return out;
  out.ci_single = ConfidenceInterval{low, high};
  auto spearman_brown = [&](double x) { return dk * x / (1.0 + (dk - 1.0) * x); };
  out.ci_average = ConfidenceInterval{spearman_brown(low), spearman_brown(high)};
  return out;
}

}  // namespace shs::stats
