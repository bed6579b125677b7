#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "shs/error.hpp"
#include "shs/stats/correlation.hpp"
#include "shs/stats/descriptive.hpp"
#include "shs/stats/matrix.hpp"
#include "shs/stats/special_functions.hpp"

namespace shs::stats {

/// Cronbach's alpha over the columns of `items`, using sample variances for
/// both the item and the total-score variances.
inline double cronbach_alpha(const DataMatrix& items) {
  const std::size_t k = items.cols();
  if (k < 2) throw StatisticError("alpha needs at least 2 items");
  if (items.rows() < 2) throw StatisticError("alpha needs at least 2 participants");

  double item_variance_sum = 0.0;
  for (std::size_t c = 0; c < k; ++c) item_variance_sum += sample_variance(items.column(c));
  const double total_variance = sample_variance(items.row_sums());
  if (total_variance <= 0.0) throw StatisticError("alpha undefined: total score variance is zero");

  const double kk = static_cast<double>(k);
  return kk / (kk - 1.0) * (1.0 - item_variance_sum / total_variance);
}

struct ConfidenceInterval {
  double low;
  double high;

  bool operator==(const ConfidenceInterval&) const = default;
};

/// Feldt-Woodruff-Salih interval for alpha:
///   [1 - (1 - a) F(1 - g/2; N-1, (N-1)(k-1)),  1 - (1 - a) F(g/2; N-1, (N-1)(k-1))]
/// with g = 1 - level.
inline ConfidenceInterval feldt_ci(double alpha, std::size_t n, std::size_t k, double level = 0.95) {
  if (n < 2 || k < 2) throw StatisticError("feldt_ci: degenerate degrees of freedom (need N >= 2, k >= 2)");
  if (!(level > 0.0 && level < 1.0)) throw DomainError("feldt_ci: level must be in (0, 1)");
  if (!(alpha <= 1.0)) throw DomainError("feldt_ci: alpha must be <= 1");
  if (alpha == 1.0) return {1.0, 1.0};
  const double df1 = static_cast<double>(n - 1);
  const double df2 = static_cast<double>((n - 1) * (k - 1));
  const double tail = 0.5 * (1.0 - level);
  const double f_upper = f_quantile(1.0 - tail, df1, df2);
  const double f_lower = f_quantile(tail, df1, df2);
  return {1.0 - (1.0 - alpha) * f_upper, 1.0 - (1.0 - alpha) * f_lower};
}

struct ItemTotal {
  std::optional<double> corrected_r;       // item vs. sum of the other items
  std::optional<double> alpha_if_deleted;  // alpha over the remaining items

  bool operator==(const ItemTotal&) const = default;
};

/// Corrected item-total statistics per column. Entries are nullopt where the
/// statistic is undefined (zero-variance item or rest total, or fewer than two
/// remaining items).
inline std::vector<ItemTotal> item_total(const DataMatrix& items) {
  if (items.rows() < 3) throw StatisticError("item-total statistics need at least 3 participants");
  if (items.cols() < 2) throw StatisticError("item-total statistics need at least 2 items");
  std::vector<ItemTotal> out(items.cols());
  for (std::size_t c = 0; c < items.cols(); ++c) {
    const DataMatrix rest = items.without_column(c);
    const std::vector<double> item = items.column(c);
    const std::vector<double> rest_total = rest.row_sums();
    if (!is_constant(item) && !is_constant(rest_total)) out[c].corrected_r = pearson(item, rest_total).r;
    if (rest.cols() >= 2) {
      try {
        out[c].alpha_if_deleted = cronbach_alpha(rest);
      } catch (const StatisticError&) {
      }
    }
  }
  return out;
}

}  // namespace shs::stats
