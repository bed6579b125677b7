#pragma once

// Analysis report document, schema "shs-report/1".
//
// Numbers are written as shortest round-trip decimals, so parse_report(
// emit_report(r)) == r exactly. Sections whose preconditions are not met
// (too few participants, constant data) are written as
// {"status": "insufficient_data", "reason": ...} instead of failing the report.

#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "shs/io/json_codec.hpp"
#include "shs/psychometrics.hpp"
#include "shs/scoring.hpp"
#include "shs/stats/correlation.hpp"
#include "shs/stats/descriptive.hpp"
#include "shs/stats/goodness_of_fit.hpp"

namespace shs::io {

inline constexpr std::string_view kReportSchema = "shs-report/1";

template <typename T>
struct Section {
  std::optional<T> value;
  std::string reason;  // set when value is empty

  static Section ok(T v) { return Section{std::move(v), {}}; }
  static Section insufficient(std::string why) { return Section{std::nullopt, std::move(why)}; }

  bool operator==(const Section&) const = default;
};

struct ReportMetadata {
  std::string scale_id;
  std::string scale_version;
  std::size_t n = 0;
  std::string tool_version;
  std::optional<std::string> generated_at;

  bool operator==(const ReportMetadata&) const = default;
};

struct SheetScore {
  std::optional<std::string> participant_id;
  ShsResult result;

  bool operator==(const SheetScore&) const = default;
};

struct DimensionDescriptive {
  std::string dimension;  // dimension key, or "overall"
  stats::DescriptiveStats stats;

  bool operator==(const DimensionDescriptive&) const = default;
};

struct AnalysisReport {
  ReportMetadata metadata;
  std::optional<std::vector<SheetScore>> per_sheet;
  std::vector<DimensionDescriptive> descriptives;
  std::vector<ConsistencySummary> consistency;
  Section<ReliabilityReport> reliability;
  Section<stats::CorrelationMatrix> dimension_correlations;
  Section<stats::CorrelationMatrix> item_correlations;
  Section<std::vector<PairedItemCorrelation>> paired_items;
  Section<stats::GofReport> response_uniformity;
  Section<NormalityReport> normality;
  ItemDistributionTable item_distribution;

  bool operator==(const AnalysisReport&) const = default;
};

// -- encoding --------------------------------------------------------------------

namespace detail {

inline Json sheet_score_to_json(const SheetScore& s) {
  return Json{{"participant_id", s.participant_id ? Json(*s.participant_id) : Json(nullptr)},
              {"result", to_json(s.result)}};
}

inline Json descriptive_to_json(const DimensionDescriptive& d) {
  return Json{{"dimension", d.dimension}, {"n", d.stats.n},           {"mean", d.stats.mean},
              {"sd", optional_number(d.stats.sd)}, {"median", d.stats.median}, {"min", d.stats.min},
              {"max", d.stats.max}};
}

inline Json consistency_to_json(const ConsistencySummary& c) {
  return Json{{"dimension", c.dimension},
              {"mean", c.mean},
              {"sd", optional_number(c.sd)},
              {"pct_consistent", c.pct_consistent},
              {"pct_ambiguous", c.pct_ambiguous},
              {"pct_inconsistent", c.pct_inconsistent}};
}

inline Json reliability_to_json(const ReliabilityReport& r) {
  Json j{{"alpha", r.alpha}, {"ci_low", r.ci_low}, {"ci_high", r.ci_high}, {"n", r.n}, {"k", r.k}};
  if (r.item_stats) {
    Json items = Json::array();
    for (const auto& s : *r.item_stats) {
      items.push_back(Json{{"item", s.item},
                           {"corrected_r", optional_number(s.corrected_r)},
                           {"alpha_if_deleted", optional_number(s.alpha_if_deleted)}});
    }
    j["item_stats"] = std::move(items);
  } else {
    j["item_stats"] = nullptr;
  }
  return j;
}

inline Json matrix_to_json(const std::vector<std::vector<std::optional<double>>>& m) {
  Json rows = Json::array();
  for (const auto& row : m) {
    Json cells = Json::array();
    for (const auto& c : row) cells.push_back(optional_number(c));
    rows.push_back(std::move(cells));
  }
  return rows;
}

inline Json correlation_to_json(const stats::CorrelationMatrix& m) {
  return Json{{"labels", m.labels}, {"r", matrix_to_json(m.r)}, {"p_values", matrix_to_json(m.p_values)},
              {"issues", m.issues}};
}

inline Json paired_to_json(const std::vector<PairedItemCorrelation>& v) {
  Json out = Json::array();
  for (const auto& p : v) {
    out.push_back(Json{{"dimension", p.dimension},
                       {"positive_item", p.positive_item},
                       {"negative_item", p.negative_item},
                       {"r", p.correlation ? Json(p.correlation->r) : Json(nullptr)},
                       {"p_value", p.correlation ? Json(p.correlation->p_value) : Json(nullptr)},
                       {"issue", p.issue}});
  }
  return out;
}

inline Json gof_to_json(const stats::GofReport& g) {
  return Json{{"chi_square", g.chi_square}, {"df", g.df}, {"p_value", g.p_value},
              {"observed", g.observed},     {"expected", g.expected}};
}

inline Json normality_to_json(const NormalityReport& n) {
  return Json{{"w", n.w},
              {"p_value", n.p_value},
              {"skewness", n.skewness},
              {"excess_kurtosis", n.excess_kurtosis},
              {"n", n.n}};
}

inline Json distribution_to_json(const ItemDistributionTable& t) {
  Json out = Json::array();
  for (const auto& d : t) out.push_back(Json{{"item", d.item}, {"counts", d.counts}, {"percent", d.percent}});
  return out;
}

template <typename T, typename F>
Json section_to_json(const Section<T>& s, F encode) {
  if (s.value) return Json{{"status", "ok"}, {"value", encode(*s.value)}};
  return Json{{"status", "insufficient_data"}, {"reason", s.reason}};
}

inline void require_finite(const Json& j, const std::string& path) {
  if (j.is_number_float() && !std::isfinite(j.get<double>())) {
    throw FormatError("non-finite number in report at " + path);
  }
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) require_finite(v, path + "/" + k);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) require_finite(j[i], path + "/" + std::to_string(i));
  }
}

// Rounds every floating-point number to `digits` decimals.
inline void round_numbers(Json& j, int digits) {
  if (j.is_number_float()) {
    const double scale = std::pow(10.0, digits);
    j = std::round(j.get<double>() * scale) / scale;
  } else if (j.is_structured()) {
    for (auto& v : j) round_numbers(v, digits);
  }
}

}  // namespace detail

inline Json report_to_json(const AnalysisReport& r) {
  using namespace detail;
  Json meta{{"scale_id", r.metadata.scale_id},
            {"scale_version", r.metadata.scale_version},
            {"n", r.metadata.n},
            {"tool_version", r.metadata.tool_version}};
  if (r.metadata.generated_at) meta["generated_at"] = *r.metadata.generated_at;

  Json j{{"schema", kReportSchema}, {"metadata", std::move(meta)}};
  if (r.per_sheet) {
    Json sheets = Json::array();
    for (const auto& s : *r.per_sheet) sheets.push_back(sheet_score_to_json(s));
    j["per_sheet"] = std::move(sheets);
  }
  Json desc = Json::array();
  for (const auto& d : r.descriptives) desc.push_back(descriptive_to_json(d));
  j["descriptives"] = std::move(desc);
  Json cons = Json::array();
  for (const auto& c : r.consistency) cons.push_back(consistency_to_json(c));
  j["consistency"] = std::move(cons);
  j["reliability"] = section_to_json(r.reliability, reliability_to_json);
  j["dimension_correlations"] = section_to_json(r.dimension_correlations, correlation_to_json);
  j["item_correlations"] = section_to_json(r.item_correlations, correlation_to_json);
  j["paired_items"] = section_to_json(r.paired_items, paired_to_json);
  j["response_uniformity"] = section_to_json(r.response_uniformity, gof_to_json);
  j["normality"] = section_to_json(r.normality, normality_to_json);
  j["item_distribution"] = distribution_to_json(r.item_distribution);
  return j;
}

struct EmitOptions {
  std::optional<int> precision;  // decimals; nullopt = shortest round-trip
  int indent = 2;
};

/// Deterministic serialization. Throws FormatError on any non-finite number.
inline std::string emit_report(const AnalysisReport& report, const EmitOptions& options = {}) {
  Json j = report_to_json(report);
  detail::require_finite(j, "");
  if (options.precision) detail::round_numbers(j, *options.precision);
  return j.dump(options.indent) + "\n";
}

// -- decoding --------------------------------------------------------------------

namespace detail {

inline std::optional<std::string> optional_string(const Json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<std::string>();
}

inline std::vector<std::vector<std::optional<double>>> matrix_from_json(const Json& j) {
  std::vector<std::vector<std::optional<double>>> out;
  for (const auto& row : j) {
    std::vector<std::optional<double>> cells;
    for (const auto& c : row) cells.push_back(c.is_null() ? std::nullopt : std::optional<double>(c.get<double>()));
    out.push_back(std::move(cells));
  }
  return out;
}

inline stats::CorrelationMatrix correlation_from_json(const Json& j) {
  stats::CorrelationMatrix m;
  m.labels = j.at("labels").get<std::vector<std::string>>();
  m.r = matrix_from_json(j.at("r"));
  m.p_values = matrix_from_json(j.at("p_values"));
  m.issues = j.at("issues").get<std::vector<std::string>>();
  return m;
}

inline ReliabilityReport reliability_from_json(const Json& j) {
  ReliabilityReport r;
  r.alpha = j.at("alpha").get<double>();
  r.ci_low = j.at("ci_low").get<double>();
  r.ci_high = j.at("ci_high").get<double>();
  r.n = j.at("n").get<std::size_t>();
  r.k = j.at("k").get<std::size_t>();
  if (!j.at("item_stats").is_null()) {
    std::vector<ItemStatistic> items;
    for (const auto& s : j.at("item_stats")) {
      items.push_back({s.at("item").get<std::string>(), read_optional_number(s, "corrected_r"),
                       read_optional_number(s, "alpha_if_deleted")});
    }
    r.item_stats = std::move(items);
  }
  return r;
}

inline std::vector<PairedItemCorrelation> paired_from_json(const Json& j) {
  std::vector<PairedItemCorrelation> out;
  for (const auto& p : j) {
    PairedItemCorrelation e;
    e.dimension = p.at("dimension").get<std::string>();
    e.positive_item = p.at("positive_item").get<std::string>();
    e.negative_item = p.at("negative_item").get<std::string>();
    if (!p.at("r").is_null()) e.correlation = stats::Correlation{p.at("r").get<double>(), p.at("p_value").get<double>()};
    e.issue = p.at("issue").get<std::string>();
    out.push_back(std::move(e));
  }
  return out;
}

inline stats::GofReport gof_from_json(const Json& j) {
  stats::GofReport g;
  g.chi_square = j.at("chi_square").get<double>();
  g.df = j.at("df").get<std::size_t>();
  g.p_value = j.at("p_value").get<double>();
  g.observed = j.at("observed").get<std::vector<double>>();
  g.expected = j.at("expected").get<std::vector<double>>();
  return g;
}

inline NormalityReport normality_from_json(const Json& j) {
  return {j.at("w").get<double>(), j.at("p_value").get<double>(), j.at("skewness").get<double>(),
          j.at("excess_kurtosis").get<double>(), j.at("n").get<std::size_t>()};
}

template <typename T, typename F>
Section<T> section_from_json(const Json& j, F decode) {
  const auto status = j.at("status").get<std::string>();
  if (status == "ok") return Section<T>::ok(decode(j.at("value")));
  if (status == "insufficient_data") return Section<T>::insufficient(j.at("reason").get<std::string>());
  throw FormatError("unknown section status: " + status);
}

}  // namespace detail

inline AnalysisReport report_from_json(const Json& j) {
  using namespace detail;
  try {
    if (j.at("schema").get<std::string>() != kReportSchema) throw FormatError("unsupported report schema");
    AnalysisReport r;
    const auto& meta = j.at("metadata");
    r.metadata.scale_id = meta.at("scale_id").get<std::string>();
    r.metadata.scale_version = meta.at("scale_version").get<std::string>();
    r.metadata.n = meta.at("n").get<std::size_t>();
    r.metadata.tool_version = meta.at("tool_version").get<std::string>();
    r.metadata.generated_at = optional_string(meta, "generated_at");
    if (j.contains("per_sheet")) {
      std::vector<SheetScore> sheets;
      for (const auto& s : j.at("per_sheet")) {
        sheets.push_back({optional_string(s, "participant_id"), shs_result_from_json(s.at("result"))});
      }
      r.per_sheet = std::move(sheets);
    }
    for (const auto& d : j.at("descriptives")) {
      stats::DescriptiveStats s;
      s.n = d.at("n").get<std::size_t>();
      s.mean = d.at("mean").get<double>();
      s.sd = read_optional_number(d, "sd");
      s.median = d.at("median").get<double>();
      s.min = d.at("min").get<double>();
      s.max = d.at("max").get<double>();
      r.descriptives.push_back({d.at("dimension").get<std::string>(), s});
    }
    for (const auto& c : j.at("consistency")) {
      ConsistencySummary s;
      s.dimension = c.at("dimension").get<std::string>();
      s.mean = c.at("mean").get<double>();
      s.sd = read_optional_number(c, "sd");
      s.pct_consistent = c.at("pct_consistent").get<double>();
      s.pct_ambiguous = c.at("pct_ambiguous").get<double>();
      s.pct_inconsistent = c.at("pct_inconsistent").get<double>();
      r.consistency.push_back(std::move(s));
    }
    r.reliability = section_from_json<ReliabilityReport>(j.at("reliability"), reliability_from_json);
    r.dimension_correlations =
        section_from_json<stats::CorrelationMatrix>(j.at("dimension_correlations"), correlation_from_json);
    r.item_correlations = section_from_json<stats::CorrelationMatrix>(j.at("item_correlations"), correlation_from_json);
    r.paired_items = section_from_json<std::vector<PairedItemCorrelation>>(j.at("paired_items"), paired_from_json);
    r.response_uniformity = section_from_json<stats::GofReport>(j.at("response_uniformity"), gof_from_json);
    r.normality = section_from_json<NormalityReport>(j.at("normality"), normality_from_json);
    for (const auto& d : j.at("item_distribution")) {
      ItemDistribution dist;
      dist.item = d.at("item").get<std::string>();
      dist.counts = d.at("counts").get<std::array<std::size_t, 5>>();
      dist.percent = d.at("percent").get<std::array<double, 5>>();
      r.item_distribution.push_back(std::move(dist));
    }
    return r;
  } catch (const Json::exception& e) {
    throw FormatError(std::string("malformed report: ") + e.what());
  }
}

inline AnalysisReport parse_report(std::string_view text) {
  try {
    return report_from_json(Json::parse(text));
  } catch (const Json::parse_error& e) {
    throw FormatError(std::string("report is not valid JSON: ") + e.what());
  }
}

}  // namespace shs::io
