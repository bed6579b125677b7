#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "shs/error.hpp"
#include "shs/io/report.hpp"
#include "shs/psychometrics.hpp"
#include "shs/scale.hpp"
#include "shs/scoring.hpp"
#include "shs/version.hpp"

namespace shs {

struct AnalysisOptions {
  bool include_per_sheet = false;
  std::optional<std::string> generated_at;  // omitted from the report when empty
  double confidence_level = 0.95;
};

namespace detail {

template <typename T, typename F>
io::Section<T> attempt(F compute) {
  try {
    return io::Section<T>::ok(compute());
  } catch (const StatisticError& e) {
    return io::Section<T>::insufficient(e.what());
  }
}

}  // namespace detail

/// Scores every sheet and assembles the full cohort report. Sheets must
/// already be valid (see validate_sheet); an empty batch is rejected.
inline io::AnalysisReport analyze(std::span<const ResponseSheet> sheets, const ScaleDefinition& scale,
                                  const AnalysisOptions& options = {}) {
  if (sheets.empty()) throw StatisticError("no valid response sheets to analyze");

  const ItemMatrix matrix = to_item_matrix(sheets, scale);
  std::vector<ShsResult> results;
  results.reserve(sheets.size());
  for (const auto& sheet : sheets) results.push_back(score_sheet(sheet, scale));

  io::AnalysisReport report;
  report.metadata = {scale.id(), scale.version(), sheets.size(), std::string(kToolVersion), options.generated_at};

  if (options.include_per_sheet) {
    std::vector<io::SheetScore> per_sheet;
    for (std::size_t i = 0; i < sheets.size(); ++i) per_sheet.push_back({sheets[i].participant_id, results[i]});
    report.per_sheet = std::move(per_sheet);
  }

  for (std::size_t d = 0; d < kDimensionCount; ++d) {
    report.descriptives.push_back({scale.dimensions()[d].key, stats::describe(dimension_series(results, d))});
  }
  report.descriptives.push_back({"overall", stats::describe(overall_series(results))});
  report.consistency = consistency_summary(results, scale);

  report.reliability = detail::attempt<ReliabilityReport>(
      [&] { return reliability(matrix, scale, options.confidence_level); });
  report.dimension_correlations =
      detail::attempt<stats::CorrelationMatrix>([&] { return dimension_correlations(results, scale); });
  report.item_correlations = detail::attempt<stats::CorrelationMatrix>([&] { return item_correlations(matrix, scale); });
  report.paired_items =
      detail::attempt<std::vector<PairedItemCorrelation>>([&] { return paired_item_correlations(matrix, scale); });
  report.response_uniformity = detail::attempt<stats::GofReport>([&] { return response_uniformity(matrix); });
  report.normality = detail::attempt<NormalityReport>([&] {
    const auto overall = overall_series(results);
    return normality(overall);
  });
  report.item_distribution = response_distribution(matrix);
  return report;
}

}  // namespace shs
