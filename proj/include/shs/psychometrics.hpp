#pragma once

// Instrument-level statistics: everything here takes SHS response data
// (ItemMatrix, ShsResult batches) and delegates to the generic routines in
// shs/stats.

#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "shs/error.hpp"
#include "shs/scale.hpp"
#include "shs/scoring.hpp"
#include "shs/stats/correlation.hpp"
#include "shs/stats/descriptive.hpp"
#include "shs/stats/goodness_of_fit.hpp"
#include "shs/stats/icc.hpp"
#include "shs/stats/matrix.hpp"
#include "shs/stats/reliability.hpp"
#include "shs/stats/shapiro_wilk.hpp"

namespace shs {

using ItemRow = std::array<int, kItemCount>;

/// N participants x 10 items of encoded answers, columns in scale order.
struct ItemMatrix {
  std::vector<std::string> item_ids;
  std::vector<ItemRow> rows;
  std::vector<std::optional<std::string>> participant_ids;

  std::size_t size() const noexcept { return rows.size(); }

  std::vector<double> column(std::size_t c) const {
    std::vector<double> out(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) out[r] = rows[r][c];
    return out;
  }

  stats::DataMatrix to_data() const {
    stats::DataMatrix m(rows.size(), kItemCount);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      for (std::size_t c = 0; c < kItemCount; ++c) m(r, c) = rows[r][c];
    }
    return m;
  }

  bool operator==(const ItemMatrix&) const = default;
};

inline std::vector<std::string> item_ids(const ScaleDefinition& scale) {
  std::vector<std::string> ids;
  for (const auto& item : scale.items()) ids.push_back(item.id);
  return ids;
}

/// Builds the matrix from sheets; throws ValidationError on the first invalid sheet.
inline ItemMatrix to_item_matrix(std::span<const ResponseSheet> sheets, const ScaleDefinition& scale) {
  ItemMatrix m;
  m.item_ids = item_ids(scale);
  m.rows.reserve(sheets.size());
  for (const auto& sheet : sheets) {
    const AnswerVector answers = answer_vector(sheet, scale);
    ItemRow row;
    for (std::size_t i = 0; i < kItemCount; ++i) row[i] = answers[i].value();
    m.rows.push_back(row);
    m.participant_ids.push_back(sheet.participant_id);
  }
  return m;
}

inline void check_matches(const ItemMatrix& matrix, const ScaleDefinition& scale) {
  if (matrix.item_ids != item_ids(scale)) throw DomainError("item matrix columns do not match the scale items");
  for (const auto& row : matrix.rows) {
    for (int v : row) {
      if (!LikertValue::valid(v)) throw DomainError("item matrix cell out of range: " + std::to_string(v));
    }
  }
}

/// Negates negative-polarity columns; on the symmetric -2..+2 scale this is
/// the polarity reversal. Applying it twice is the identity.
inline ItemMatrix reverse_code(const ItemMatrix& matrix, const ScaleDefinition& scale) {
  check_matches(matrix, scale);
  ItemMatrix out = matrix;
  for (auto& row : out.rows) {
    for (std::size_t c = 0; c < kItemCount; ++c) {
      if (scale.items()[c].polarity == Polarity::negative) row[c] = -row[c];
    }
  }
  return out;
}

struct ItemStatistic {
  std::string item;
  std::optional<double> corrected_r;
  std::optional<double> alpha_if_deleted;

  bool operator==(const ItemStatistic&) const = default;
};

struct ReliabilityReport {
  double alpha = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::size_t n = 0;
  std::size_t k = 0;
  std::optional<std::vector<ItemStatistic>> item_stats;  // needs N >= 3

  bool operator==(const ReliabilityReport&) const = default;
};

/// Alpha over the reverse-coded items.
inline double cronbach_alpha(const ItemMatrix& matrix, const ScaleDefinition& scale) {
  return stats::cronbach_alpha(reverse_code(matrix, scale).to_data());
}

inline std::vector<ItemStatistic> item_total(const ItemMatrix& matrix, const ScaleDefinition& scale) {
  const auto raw = stats::item_total(reverse_code(matrix, scale).to_data());
  std::vector<ItemStatistic> out;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    out.push_back({scale.items()[i].id, raw[i].corrected_r, raw[i].alpha_if_deleted});
  }
  return out;
}

inline ReliabilityReport reliability(const ItemMatrix& matrix, const ScaleDefinition& scale, double level = 0.95) {
  ReliabilityReport r;
  r.n = matrix.size();
  r.k = kItemCount;
  r.alpha = cronbach_alpha(matrix, scale);
  const auto ci = stats::feldt_ci(r.alpha, r.n, r.k, level);
  r.ci_low = ci.low;
  r.ci_high = ci.high;
  if (r.n >= 3) r.item_stats = item_total(matrix, scale);
  return r;
}

struct PairedItemCorrelation {
  std::string dimension;
  std::string positive_item;
  std::string negative_item;
  std::optional<stats::Correlation> correlation;  // nullopt when a column is constant
  std::string issue;

  bool operator==(const PairedItemCorrelation&) const = default;
};

/// Pearson r between each dimension's positive item and its reversed
/// negative item.
inline std::vector<PairedItemCorrelation> paired_item_correlations(const ItemMatrix& matrix,
                                                                   const ScaleDefinition& scale) {
  check_matches(matrix, scale);
  if (matrix.size() < 3) throw StatisticError("paired-item correlations need at least 3 participants");
  std::vector<PairedItemCorrelation> out;
  for (std::size_t d = 0; d < kDimensionCount; ++d) {
    PairedItemCorrelation entry{scale.dimensions()[d].key, scale.positive_item(d).id, scale.negative_item(d).id,
                                std::nullopt, {}};
    const std::vector<double> pos = matrix.column(2 * d);
    std::vector<double> neg = matrix.column(2 * d + 1);
    for (double& v : neg) v = -v;
    try {
      entry.correlation = stats::pearson(pos, neg);
    } catch (const StatisticError& e) {
      entry.issue = e.what();
    }
    out.push_back(std::move(entry));
  }
  return out;
}

inline std::vector<double> dimension_series(std::span<const ShsResult> results, std::size_t d) {
  std::vector<double> out;
  out.reserve(results.size());
  for (const auto& r : results) out.push_back(r.dimensions[d].score);
  return out;
}

inline std::vector<double> overall_series(std::span<const ShsResult> results) {
  std::vector<double> out;
  out.reserve(results.size());
  for (const auto& r : results) out.push_back(r.overall);
  return out;
}

inline std::vector<std::string> dimension_keys(const ScaleDefinition& scale) {
  std::vector<std::string> keys;
  for (const auto& d : scale.dimensions()) keys.push_back(d.key);
  return keys;
}

/// 5x5 Pearson matrix over the dimension scores.
inline stats::CorrelationMatrix dimension_correlations(std::span<const ShsResult> results,
                                                       const ScaleDefinition& scale) {
  if (results.size() < 3) throw StatisticError("dimension correlations need at least 3 results");
  std::vector<std::vector<double>> series;
  for (std::size_t d = 0; d < kDimensionCount; ++d) series.push_back(dimension_series(results, d));
  return stats::correlation_matrix(dimension_keys(scale), series);
}

/// 10x10 Pearson matrix over reverse-coded items.
inline stats::CorrelationMatrix item_correlations(const ItemMatrix& matrix, const ScaleDefinition& scale) {
  const ItemMatrix reversed = reverse_code(matrix, scale);
  if (reversed.size() < 3) throw StatisticError("item correlations need at least 3 participants");
  std::vector<std::vector<double>> series;
  for (std::size_t c = 0; c < kItemCount; ++c) series.push_back(reversed.column(c));
  return stats::correlation_matrix(reversed.item_ids, series);
}

struct ItemDistribution {
  std::string item;
  std::array<std::size_t, 5> counts{};  // categories -2..+2
  std::array<double, 5> percent{};      // full precision

  bool operator==(const ItemDistribution&) const = default;
};

using ItemDistributionTable = std::vector<ItemDistribution>;

inline ItemDistributionTable response_distribution(const ItemMatrix& matrix) {
  if (matrix.size() == 0) throw StatisticError("response distribution needs at least 1 participant");
  ItemDistributionTable table;
  for (std::size_t c = 0; c < matrix.item_ids.size(); ++c) {
    ItemDistribution d;
    d.item = matrix.item_ids[c];
    for (const auto& row : matrix.rows) {
      if (!LikertValue::valid(row[c])) throw DomainError("item matrix cell out of range");
      d.counts[static_cast<std::size_t>(row[c] - kLikertMin)] += 1;
    }
    for (std::size_t k = 0; k < 5; ++k) {
      d.percent[k] = 100.0 * static_cast<double>(d.counts[k]) / static_cast<double>(matrix.size());
    }
    table.push_back(std::move(d));
  }
  return table;
}

/// Pooled answers of all items against a uniform spread over the five categories.
inline stats::GofReport response_uniformity(const ItemMatrix& matrix) {
  if (matrix.size() == 0) throw StatisticError("uniformity test needs at least 1 participant");
  std::vector<double> observed(5, 0.0);
  for (const auto& row : matrix.rows) {
    for (int v : row) observed[static_cast<std::size_t>(v - kLikertMin)] += 1.0;
  }
  const double total = static_cast<double>(matrix.size() * kItemCount);
  std::vector<double> expected(5, total / 5.0);
  return stats::chi_square_gof(observed, expected);
}

struct NormalityReport {
  double w = 1.0;
  double p_value = 1.0;
  double skewness = 0.0;
  double excess_kurtosis = 0.0;
  std::size_t n = 0;

  bool operator==(const NormalityReport&) const = default;
};

inline NormalityReport normality(std::span<const double> x) {
  const auto sw = stats::shapiro_wilk(x);
  const auto shape = stats::skew_kurtosis(x);
  return {sw.w, sw.p_value, shape.skewness, shape.excess_kurtosis, x.size()};
}

struct ConsistencySummary {
  std::string dimension;
  double mean = 0.0;
  std::optional<double> sd;
  double pct_consistent = 0.0;    // |c| <= 0.25
  double pct_ambiguous = 0.0;     // 0.25 < |c| <= 0.50
  double pct_inconsistent = 0.0;  // |c| > 0.50

  bool operator==(const ConsistencySummary&) const = default;
};

inline std::vector<ConsistencySummary> consistency_summary(std::span<const ShsResult> results,
                                                           const ScaleDefinition& scale) {
  if (results.empty()) throw StatisticError("consistency summary needs at least 1 result");
  std::vector<ConsistencySummary> out;
  const double n = static_cast<double>(results.size());
  for (std::size_t d = 0; d < kDimensionCount; ++d) {
    ConsistencySummary s;
    s.dimension = scale.dimensions()[d].key;
    std::vector<double> c;
    std::array<std::size_t, 3> tally{};
    for (const auto& r : results) {
      c.push_back(r.dimensions[d].consistency);
      tally[static_cast<std::size_t>(r.dimensions[d].flag)] += 1;
    }
    const auto desc = stats::describe(c);
    s.mean = desc.mean;
    s.sd = desc.sd;
    s.pct_consistent = 100.0 * static_cast<double>(tally[0]) / n;
    s.pct_ambiguous = 100.0 * static_cast<double>(tally[1]) / n;
    s.pct_inconsistent = 100.0 * static_cast<double>(tally[2]) / n;
    out.push_back(std::move(s));
  }
  return out;
}

/// Fraction of all dimension judgments flagged inconsistent.
inline double inconsistent_rate(std::span<const ShsResult> results) {
  if (results.empty()) return 0.0;
  std::size_t flagged = 0;
  for (const auto& r : results) {
    for (const auto& d : r.dimensions) flagged += d.flag == ConsistencyFlag::inconsistent ? 1 : 0;
  }
  return static_cast<double>(flagged) / static_cast<double>(results.size() * kDimensionCount);
}

}  // namespace shs
