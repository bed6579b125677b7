#pragma once

// Transport-independent core of the collection service. Each handler maps a
// request to an HttpReply; service_http.hpp binds them to cpp-httplib routes.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "shs/analysis.hpp"
#include "shs/error.hpp"
#include "shs/io/csv.hpp"
#include "shs/io/json_codec.hpp"
#include "shs/io/report.hpp"
#include "shs/io/store.hpp"
#include "shs/scale.hpp"
#include "shs/scoring.hpp"

namespace shs::service {

using io::Json;

inline constexpr std::string_view kQuestionnaireSchema = "shs-questionnaire/1";
inline constexpr std::string_view kSubmissionSchema = "shs-submission/1";
inline constexpr std::string_view kResultSchema = "shs-result/1";

struct HttpReply {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

inline HttpReply json_reply(int status, const Json& j) { return {status, j.dump(2) + "\n"}; }

inline HttpReply error_reply(int status, const std::string& message) {
  return json_reply(status, Json{{"error", message}});
}

struct ServiceOptions {
  std::filesystem::path store_path = "shs-responses.ndjson";
  std::optional<std::string> report_token;  // guards /report and /export when set
};

inline Json questionnaire_document(const ScaleDefinition& scale, const std::string& lang) {
  Json dims = Json::array();
  for (const auto& d : scale.dimensions()) dims.push_back(Json{{"key", d.key}, {"name", d.name}});
  Json items = Json::array();
  for (const auto& item : scale.items()) {
    items.push_back(Json{{"id", item.id},
                         {"dimension", item.dimension},
                         {"polarity", to_string(item.polarity)},
                         {"text", item.text.at(lang)}});
  }
  Json likert = Json::array();
  for (const auto& opt : scale.likert()) likert.push_back(Json{{"code", opt.code}, {"label", opt.label.at(lang)}});
  return Json{{"schema", kQuestionnaireSchema},
              {"scale_id", scale.id()},
              {"scale_version", scale.version()},
              {"language", lang},
              {"languages", scale.languages()},
              {"dimensions", std::move(dims)},
              {"items", std::move(items)},
              {"likert", std::move(likert)}};
}

class CollectionService {
 public:
  CollectionService(ScaleDefinition scale, ServiceOptions options)
      : scale_(std::move(scale)), options_(std::move(options)), store_(options_.store_path) {
    const auto scan = store_.scan();
    warnings_ = scan.warnings;
    for (const auto& record : scan.records) index(record);
  }

  const ScaleDefinition& scale() const noexcept { return scale_; }
  const std::vector<std::string>& load_warnings() const noexcept { return warnings_; }

  HttpReply questionnaire(const std::optional<std::string>& lang) const {
    const std::string tag = lang.value_or("en");
    if (!scale_.supports(tag)) {
      return json_reply(404, Json{{"error", "unsupported language: " + tag}, {"supported", scale_.languages()}});
    }
    return json_reply(200, questionnaire_document(scale_, tag));
  }

  /// Body: {"language": "en", "answers": {"q1": 1, ...}, "nonce": "...",
  /// "client_timestamp": "..."}; only answers is required.
  HttpReply submit(std::string_view body) {
    Json j;
    try {
      j = Json::parse(body);
    } catch (const std::exception&) {
      return error_reply(422, "body is not valid JSON");
    }
    if (!j.is_object()) return error_reply(422, "body must be a JSON object");
    if (!j.contains("answers")) return error_reply(422, "body has no answers object");

    io::SubmissionRecord record;
    try {
      record.sheet.answers = io::answers_from_json(j.at("answers"));
      record.language = string_field(j, "language").value_or("en");
      record.nonce = string_field(j, "nonce");
      record.client_timestamp = string_field(j, "client_timestamp");
    } catch (const std::exception& e) {
      return error_reply(422, e.what());
    }
    if (!scale_.supports(record.language)) {
      return json_reply(400, Json{{"error", "unsupported language: " + record.language},
                                  {"supported", scale_.languages()}});
    }
    if (const auto violations = validate_sheet(record.sheet, scale_); !violations.empty()) {
      Json items = Json::array();
      for (const auto& v : violations) {
        items.push_back(Json{{"kind", to_string(v.kind)}, {"item", v.item}, {"message", v.message()}});
      }
      return json_reply(400, Json{{"error", "invalid response sheet"}, {"violations", std::move(items)}});
    }
    const ShsResult result = score_sheet(record.sheet, scale_);

    std::lock_guard lock(mutex_);
    if (record.nonce) {
      if (auto it = nonces_.find(*record.nonce); it != nonces_.end()) {
        const auto& original = records_.at(it->second);
        if (original.sheet.answers != record.sheet.answers || original.language != record.language) {
          return error_reply(409, "nonce already used for a different submission");
        }
        return json_reply(200, submission_document(original, result));
      }
    }
    record.id = next_id();
    record.sheet.participant_id = record.id;
    record.sheet.recorded_at = io::utc_now();
    try {
      store_.append(record);
    } catch (const Error& e) {
      return error_reply(500, e.what());
    }
    index(record);
    return json_reply(201, submission_document(record, result));
  }

  HttpReply result(const std::string& id) const {
    std::lock_guard lock(mutex_);
    auto it = records_.find(id);
    if (it == records_.end()) return error_reply(404, "unknown submission id: " + id);
    return json_reply(200, submission_document(it->second, score_sheet(it->second.sheet, scale_)));
  }

  /// Recomputed from a fresh store scan on every call.
  HttpReply report(const std::optional<std::string>& authorization, bool include_per_sheet = false) const {
    if (!authorized(authorization)) return error_reply(401, "missing or invalid bearer token");
    const auto sheets = stored_sheets();
    if (sheets.empty()) return error_reply(404, "no submissions stored");
    AnalysisOptions opts;
    opts.include_per_sheet = include_per_sheet;
    try {
      return {200, io::emit_report(analyze(sheets, scale_, opts))};
    } catch (const Error& e) {
      return error_reply(500, e.what());
    }
  }

  /// Store contents as a response CSV; participant_id is the submission id.
  HttpReply export_csv(const std::optional<std::string>& authorization) const {
    if (!authorized(authorization)) return error_reply(401, "missing or invalid bearer token");
    return {200, io::emit_csv(stored_sheets()), "text/csv"};
  }

  std::vector<ResponseSheet> stored_sheets() const {
    std::vector<ResponseSheet> sheets;
    io::ScanResult scan;
    {
      std::lock_guard lock(mutex_);
      scan = store_.scan();
    }
    for (auto& r : scan.records) {
      r.sheet.recorded_at.reset();
      sheets.push_back(std::move(r.sheet));
    }
    return sheets;
  }

 private:
  static std::optional<std::string> string_field(const Json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    if (!j.at(key).is_string()) throw FormatError(std::string(key) + " must be a string");
    return j.at(key).get<std::string>();
  }

  static Json submission_document(const io::SubmissionRecord& record, const ShsResult& result) {
    return Json{{"schema", kResultSchema},
                {"id", record.id},
                {"language", record.language},
                {"server_timestamp",
                 record.sheet.recorded_at ? Json(io::format_utc(*record.sheet.recorded_at)) : Json(nullptr)},
                {"result", io::to_json(result)}};
  }

  bool authorized(const std::optional<std::string>& header) const {
    if (!options_.report_token) return true;
    return header && *header == "Bearer " + *options_.report_token;
  }

  void index(const io::SubmissionRecord& record) {
    unsigned long n = 0;
    if (std::sscanf(record.id.c_str(), "sub-%lu", &n) == 1) counter_ = std::max(counter_, n);
    if (record.nonce) nonces_.emplace(*record.nonce, record.id);
    records_[record.id] = record;
  }

  std::string next_id() {
    char buf[32];
    std::snprintf(buf, sizeof buf, "sub-%06lu", ++counter_);
    return buf;
  }

  ScaleDefinition scale_;
  ServiceOptions options_;
  io::ResponseStore store_;
  mutable std::mutex mutex_;
  std::map<std::string, io::SubmissionRecord> records_;
  std::map<std::string, std::string> nonces_;
  unsigned long counter_ = 0;
  std::vector<std::string> warnings_;
};

}  // namespace shs::service
