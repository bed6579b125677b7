#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "shs/error.hpp"
#include "shs/stats/descriptive.hpp"
#include "shs/stats/special_functions.hpp"

namespace shs::stats {

struct Correlation {
  double r;
  double p_value;  // two-sided

  bool operator==(const Correlation&) const = default;
};

/// Sample Pearson correlation with a two-sided t-test p-value.
inline Correlation pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw StatisticError("pearson: series lengths differ");
  const std::size_t n = x.size();
  if (n < 3) throw StatisticError("pearson: needs at least 3 observations");
  if (is_constant(x) || is_constant(y)) throw StatisticError("pearson: constant series");

  const double mx = mean(x);
  const double my = mean(y);
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
  const double r = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  const double df = static_cast<double>(n - 2);
  double p = 0.0;
  if (std::fabs(r) < 1.0) {
    const double t = r * std::sqrt(df / (1.0 - r * r));
    p = student_t_two_sided(t, df);
  }
  return {r, p};
}

/// Symmetric matrix of pairwise correlations. Cells whose correlation is
/// undefined (constant series) hold nullopt and are listed in `issues`.
struct CorrelationMatrix {
  std::vector<std::string> labels;
  std::vector<std::vector<std::optional<double>>> r;
  std::vector<std::vector<std::optional<double>>> p_values;
  std::vector<std::string> issues;

  bool operator==(const CorrelationMatrix&) const = default;
};

inline CorrelationMatrix correlation_matrix(const std::vector<std::string>& labels,
                                            const std::vector<std::vector<double>>& series) {
  if (labels.size() != series.size()) throw StatisticError("correlation_matrix: label count mismatch");
  const std::size_t k = series.size();
  for (const auto& s : series) {
    if (s.size() < 3) throw StatisticError("correlation_matrix: needs at least 3 observations");
    if (s.size() != series.front().size()) throw StatisticError("correlation_matrix: series lengths differ");
  }
  CorrelationMatrix m;
  m.labels = labels;
  m.r.assign(k, std::vector<std::optional<double>>(k));
  m.p_values.assign(k, std::vector<std::optional<double>>(k));
  for (std::size_t i = 0; i < k; ++i) {
    m.r[i][i] = 1.0;
    m.p_values[i][i] = 0.0;
    for (std::size_t j = i + 1; j < k; ++j) {
      try {
        const auto c = pearson(series[i], series[j]);
        m.r[i][j] = m.r[j][i] = c.r;
        m.p_values[i][j] = m.p_values[j][i] = c.p_value;
      } catch (const StatisticError& e) {
        m.issues.push_back(labels[i] + "/" + labels[j] + ": " + e.what());
      }
    }
  }
  return m;
}

}  // namespace shs::stats
