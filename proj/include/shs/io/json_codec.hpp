#pragma once

// JSON encodings shared by the report, the store and the HTTP service. Keys
// are emitted in a fixed order (ordered_json preserves insertion order).

#include <chrono>
#include <cstdio>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "shs/error.hpp"
#include "shs/scale.hpp"
#include "shs/scoring.hpp"

namespace shs::io {

using Json = nlohmann::ordered_json;

// -- timestamps (UTC, seconds resolution, ISO 8601 with trailing Z) -----------

inline std::string format_utc(std::chrono::sys_seconds t) {
  using namespace std::chrono;
  const auto day = floor<days>(t);
  const year_month_day ymd{day};
  const hh_mm_ss<seconds> hms{t - day};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02dZ", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                static_cast<int>(hms.hours().count()), static_cast<int>(hms.minutes().count()),
                static_cast<int>(hms.seconds().count()));
  return buf;
}

inline std::chrono::sys_seconds parse_utc(std::string_view text) {
  using namespace std::chrono;
  int y = 0;
  unsigned mo = 0;
  unsigned d = 0;
  int h = 0;
  int mi = 0;
  int s = 0;
  char z = 0;
  const std::string copy(text);
  if (std::sscanf(copy.c_str(), "%4d-%2u-%2uT%2d:%2d:%2d%c", &y, &mo, &d, &h, &mi, &s, &z) != 7 || z != 'Z' ||
      copy.size() != 20) {
    throw FormatError("invalid UTC timestamp: " + copy);
  }
  const year_month_day ymd{year{y}, month{mo}, day{d}};
  if (!ymd.ok() || h > 23 || mi > 59 || s > 59) throw FormatError("invalid UTC timestamp: " + copy);
  return sys_days{ymd} + hours{h} + minutes{mi} + seconds{s};
}

inline std::chrono::sys_seconds utc_now() {
  return std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now());
}

// -- small helpers -------------------------------------------------------------

inline Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

inline std::optional<double> read_optional_number(const Json& j, const char* key) {
  const auto& v = j.at(key);
  if (v.is_null()) return std::nullopt;
  return v.get<double>();
}

inline ConsistencyFlag parse_flag(const std::string& s) {
  if (s == "consistent") return ConsistencyFlag::consistent;
  if (s == "ambiguous") return ConsistencyFlag::ambiguous;
  if (s == "inconsistent") return ConsistencyFlag::inconsistent;
  throw FormatError("unknown consistency flag: " + s);
}

inline Band parse_band(const std::string& s) {
  for (const auto& b : kBands) {
    if (s == to_string(b.label)) return b.label;
  }
  throw FormatError("unknown band: " + s);
}

// -- ShsResult -------------------------------------------------------------------

inline Json to_json(const ShsResult& r) {
  Json dims = Json::array();
  for (const auto& d : r.dimensions) {
    dims.push_back(Json{{"dimension", d.dimension},
                        {"score", d.score},
                        {"consistency", d.consistency},
                        {"flag", to_string(d.flag)}});
  }
  return Json{{"dimensions", std::move(dims)},
              {"overall", r.overall},
              {"overall_consistency", r.overall_consistency},
              {"shs100", r.shs100},
              {"band", to_string(r.band)}};
}

inline ShsResult shs_result_from_json(const Json& j) {
  ShsResult r;
  const auto& dims = j.at("dimensions");
  if (!dims.is_array() || dims.size() != kDimensionCount) throw FormatError("result needs 5 dimensions");
  for (std::size_t i = 0; i < kDimensionCount; ++i) {
    const auto& d = dims[i];
    r.dimensions[i] = DimensionResult{d.at("dimension").get<std::string>(), d.at("score").get<double>(),
                                      d.at("consistency").get<double>(), parse_flag(d.at("flag").get<std::string>())};
  }
  r.overall = j.at("overall").get<double>();
  r.overall_consistency = j.at("overall_consistency").get<double>();
  r.shs100 = j.at("shs100").get<double>();
  r.band = parse_band(j.at("band").get<std::string>());
  return r;
}

/// Answers object {"q1": 1, ...} in scale order of insertion (q1..q10 when
/// the sheet is complete, std::map order otherwise).
inline Json answers_to_json(const ResponseSheet& sheet) {
  Json answers = Json::object();
  for (std::size_t i = 1; i <= kItemCount; ++i) {
    const auto key = "q" + std::to_string(i);
    if (auto it = sheet.answers.find(key); it != sheet.answers.end()) answers[key] = it->second;
  }
  for (const auto& [k, v] : sheet.answers) {
    if (!answers.contains(k)) answers[k] = v;
  }
  return answers;
}

/// Strict decoding of an answers object: every value must be an integer.
inline std::map<std::string, int> answers_from_json(const Json& j) {
  if (!j.is_object()) throw FormatError("answers must be an object");
  std::map<std::string, int> out;
  for (const auto& [key, value] : j.items()) {
    if (!value.is_number_integer()) throw FormatError("answer " + key + " is not an integer");
    const auto v = value.get<long long>();
    // clamped to +-1000; still out of range for validate_sheet
    out[key] = v > 1000 ? 1000 : (v < -1000 ? -1000 : static_cast<int>(v));
  }
  return out;
}

}  // namespace shs::io
