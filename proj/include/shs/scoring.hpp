#pragma once

#include <array>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "shs/error.hpp"
#include "shs/scale.hpp"

namespace shs {

/// An answer on the symmetric five-point scale, -2 (strongly disagree) to
/// +2 (strongly agree).
class LikertValue {
 public:
  constexpr LikertValue() = default;

  constexpr explicit LikertValue(int v) : value_(v) {
    if (v < kLikertMin || v > kLikertMax) throw DomainError("Likert value out of range: " + std::to_string(v));
  }

  static constexpr bool valid(int v) noexcept { return v >= kLikertMin && v <= kLikertMax; }

  constexpr int value() const noexcept { return value_; }

  constexpr bool operator==(const LikertValue&) const = default;

 private:
  int value_ = 0;
};

/// One participant's answers, keyed by item id. Values are raw integers so
/// that out-of-range input can be reported by validate_sheet().
struct ResponseSheet {
  std::map<std::string, int> answers;
  std::optional<std::string> participant_id;
  std::optional<std::chrono::sys_seconds> recorded_at;
  std::vector<std::string> metadata;  // opaque trailing CSV columns

  bool operator==(const ResponseSheet&) const = default;
};

enum class ConsistencyFlag { consistent, ambiguous, inconsistent };

inline const char* to_string(ConsistencyFlag f) {
  switch (f) {
    case ConsistencyFlag::consistent:
      return "consistent";
    case ConsistencyFlag::ambiguous:
      return "ambiguous";
    case ConsistencyFlag::inconsistent:
      return "inconsistent";
  }
  return "?";
}

/// |c| <= 0.25 consistent, <= 0.50 ambiguous, above that inconsistent.
inline ConsistencyFlag flag_for(double consistency) noexcept {
  const double m = std::fabs(consistency);
  if (m <= 0.25) return ConsistencyFlag::consistent;
  if (m <= 0.50) return ConsistencyFlag::ambiguous;
  return ConsistencyFlag::inconsistent;
}

enum class Band { high_risk, elevated, moderate, low_risk };

inline const char* to_string(Band b) {
  switch (b) {
    case Band::high_risk:
      return "high_risk";
    case Band::elevated:
      return "elevated";
    case Band::moderate:
      return "moderate";
    case Band::low_risk:
      return "low_risk";
  }
  return "?";
}

struct Interval {
  double low;
  double high;
  bool high_closed;

  bool contains(double x) const noexcept { return x >= low && (high_closed ? x <= high : x < high); }
  bool operator==(const Interval&) const = default;
};

struct InterpretationBand {
  Band label;
  Interval shs_range;
  Interval shs100_range;
  std::string_view description;

  bool operator==(const InterpretationBand& o) const { return label == o.label; }
};

inline constexpr std::array<InterpretationBand, 4> kBands{{
    {Band::high_risk, {-1.0, -0.5, false}, {0.0, 25.0, false}, "High hallucination risk; unreliable outputs"},
    {Band::elevated, {-0.5, 0.0, false}, {25.0, 50.0, false}, "Elevated hallucination risk; caution advised"},
    {Band::moderate, {0.0, 0.5, false}, {50.0, 75.0, false}, "Moderate reliability; some concerns"},
    {Band::low_risk, {0.5, 1.0, true}, {75.0, 100.0, true}, "Low hallucination risk; reliable outputs"},
}};

inline void require_unit_range(double score) {
  if (!(score >= -1.0 && score <= 1.0)) {
    throw DomainError("score outside [-1, +1]: " + std::to_string(score));
  }
}

/// Interior boundaries belong to the band above them.
inline const InterpretationBand& interpret(double score) {
  require_unit_range(score);
  for (const auto& band : kBands) {
    if (band.shs_range.contains(score)) return band;
  }
  throw DomainError("no band for score");  // unreachable: bands tile [-1, 1]
}

inline double rescale_100(double score) {
  require_unit_range(score);
  return 50.0 * (score + 1.0);
}

struct DimensionScore {
  double score;
  double consistency;
};

/// s = (p - n) / 4, c = (p + n) / 4. Exact in binary floating point.
constexpr DimensionScore score_dimension(LikertValue positive, LikertValue negative) noexcept {
  return {(positive.value() - negative.value()) / 4.0, (positive.value() + negative.value()) / 4.0};
}

struct DimensionResult {
  std::string dimension;  // Dimension::key
  double score = 0.0;
  double consistency = 0.0;
  ConsistencyFlag flag = ConsistencyFlag::consistent;

  bool operator==(const DimensionResult&) const = default;
};

struct ShsResult {
  std::array<DimensionResult, kDimensionCount> dimensions;
  double overall = 0.0;
  double overall_consistency = 0.0;
  double shs100 = 50.0;
  Band band = Band::moderate;

  bool operator==(const ShsResult&) const = default;
};

/// Reports every problem with a sheet, not just the first one.
inline std::vector<Violation> validate_sheet(const ResponseSheet& sheet, const ScaleDefinition& scale) {
  std::vector<Violation> out;
  for (const auto& item : scale.items()) {
    auto it = sheet.answers.find(item.id);
    if (it == sheet.answers.end()) {
      out.push_back({Violation::Kind::missing, item.id});
    } else if (!LikertValue::valid(it->second)) {
      out.push_back({Violation::Kind::out_of_range, item.id});
    }
  }
  for (const auto& [id, value] : sheet.answers) {
    if (!scale.item_index(id)) out.push_back({Violation::Kind::unknown, id});
  }
  return out;
}

/// Answers in scale item order (q1..q10).
using AnswerVector = std::array<LikertValue, kItemCount>;

inline ShsResult score_answers(const AnswerVector& answers, const ScaleDefinition& scale) {
  ShsResult result;
  double score_sum = 0.0;
  double consistency_sum = 0.0;
  for (std::size_t d = 0; d < kDimensionCount; ++d) {
    const auto [s, c] = score_dimension(answers[2 * d], answers[2 * d + 1]);
    result.dimensions[d] = DimensionResult{scale.dimensions()[d].key, s, c, flag_for(c)};
    score_sum += s;
    consistency_sum += c;
  }
  result.overall = score_sum / static_cast<double>(kDimensionCount);
  result.overall_consistency = consistency_sum / static_cast<double>(kDimensionCount);
  result.shs100 = rescale_100(result.overall);
  result.band = interpret(result.overall).label;
  return result;
}

inline AnswerVector answer_vector(const ResponseSheet& sheet, const ScaleDefinition& scale) {
  auto violations = validate_sheet(sheet, scale);
  if (!violations.empty()) throw ValidationError(std::move(violations));
  AnswerVector answers;
  for (std::size_t i = 0; i < kItemCount; ++i) answers[i] = LikertValue(sheet.answers.at(scale.items()[i].id));
  return answers;
}

/// Throws ValidationError if the sheet does not validate.
inline ShsResult score_sheet(const ResponseSheet& sheet, const ScaleDefinition& scale) {
  return score_answers(answer_vector(sheet, scale), scale);
}

inline ResponseSheet make_sheet(const std::array<int, kItemCount>& values,
                                std::optional<std::string> participant_id = std::nullopt) {
  ResponseSheet sheet;
  for (std::size_t i = 0; i < kItemCount; ++i) sheet.answers["q" + std::to_string(i + 1)] = values[i];
  sheet.participant_id = std::move(participant_id);
  return sheet;
}

}  // namespace shs
