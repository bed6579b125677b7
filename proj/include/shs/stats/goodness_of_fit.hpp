#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "shs/error.hpp"
#include "shs/stats/special_functions.hpp"

namespace shs::stats {

struct GofReport {
  double chi_square = 0.0;
  std::size_t df = 0;
  double p_value = 1.0;  // upper tail
  std::vector<double> observed;
  std::vector<double> expected;

  bool operator==(const GofReport&) const = default;
};

/// Pearson chi-square goodness of fit, df = categories - 1.
inline GofReport chi_square_gof(std::span<const double> observed, std::span<const double> expected) {
  if (observed.size() != expected.size()) throw StatisticError("chi-square: category counts differ");
  if (observed.size() < 2) throw StatisticError("chi-square: needs at least 2 categories");
  GofReport out;
  out.observed.assign(observed.begin(), observed.end());
  out.expected.assign(expected.begin(), expected.end());
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (!(expected[i] > 0.0)) throw StatisticError("chi-square: expected count must be positive");
    if (observed[i] < 0.0) throw StatisticError("chi-square: negative observed count");
    const double d = observed[i] - expected[i];
    out.chi_square += d * d / expected[i];
  }
  out.df = observed.size() - 1;
  out.p_value = chi_square_sf(out.chi_square, static_cast<double>(out.df));
  return out;
}

}  // namespace shs::stats
