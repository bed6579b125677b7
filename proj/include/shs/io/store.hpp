#pragma once

// Append-only response store: one JSON record per line, flushed per append.
// A final line without its terminating newline is a torn write; scans skip it
// with a warning and the next append truncates it away.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <optional>
#include <string>
#include <vector>

#include "shs/error.hpp"
#include "shs/io/json_codec.hpp"
#include "shs/scoring.hpp"

namespace shs::io {

struct SubmissionRecord {
  std::string id;
  ResponseSheet sheet;  // sheet.recorded_at holds the server timestamp
  std::string language;
  std::optional<std::string> nonce;
  std::optional<std::string> client_timestamp;

  bool operator==(const SubmissionRecord&) const = default;
};

inline Json record_to_json(const SubmissionRecord& r) {
  Json j{{"id", r.id}, {"language", r.language}};
  j["nonce"] = r.nonce ? Json(*r.nonce) : Json(nullptr);
  j["client_timestamp"] = r.client_timestamp ? Json(*r.client_timestamp) : Json(nullptr);
  j["server_timestamp"] = r.sheet.recorded_at ? Json(format_utc(*r.sheet.recorded_at)) : Json(nullptr);
  j["participant_id"] = r.sheet.participant_id ? Json(*r.sheet.participant_id) : Json(nullptr);
  j["answers"] = answers_to_json(r.sheet);
  return j;
}

inline SubmissionRecord record_from_json(const Json& j) {
  SubmissionRecord r;
  r.id = j.at("id").get<std::string>();
  r.language = j.at("language").get<std::string>();
  if (!j.at("nonce").is_null()) r.nonce = j.at("nonce").get<std::string>();
  if (!j.at("client_timestamp").is_null()) r.client_timestamp = j.at("client_timestamp").get<std::string>();
  if (!j.at("server_timestamp").is_null()) r.sheet.recorded_at = parse_utc(j.at("server_timestamp").get<std::string>());
  if (!j.at("participant_id").is_null()) r.sheet.participant_id = j.at("participant_id").get<std::string>();
  r.sheet.answers = answers_from_json(j.at("answers"));
  return r;
}

struct ScanResult {
  std::vector<SubmissionRecord> records;
  std::vector<std::string> warnings;
};

/// Owns one store file. Not internally synchronized: the single writer
/// serializes appends (see service::CollectionService).
class ResponseStore {
 public:
  explicit ResponseStore(std::filesystem::path path) : path_(std::move(path)) {}

  const std::filesystem::path& path() const noexcept { return path_; }

  void append(const SubmissionRecord& record) {
    repair_torn_tail();
    std::ofstream out(path_, std::ios::binary | std::ios::app);
    if (!out) throw FormatError("store is not writable: " + path_.string());
    const std::string line = record_to_json(record).dump() + "\n";
    out.write(line.data(), static_cast<std::streamsize>(line.size()));
    out.flush();
    if (!out) throw FormatError("failed to append to store: " + path_.string());
  }

  /// Records in append order. In strict mode a corrupt line that is not the
  /// last one throws; otherwise it is skipped with a warning.
  ScanResult scan(bool strict = false) const {
    ScanResult result;
    std::error_code ec;
    if (!std::filesystem::exists(path_, ec)) return result;
    std::ifstream in(path_, std::ios::binary);
    if (!in) throw FormatError("store is not readable: " + path_.string());
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

    std::size_t pos = 0;
    std::size_t line_no = 0;
    while (pos < content.size()) {
      ++line_no;
      const auto nl = content.find('\n', pos);
      if (nl == std::string::npos) {
        result.warnings.push_back("line " + std::to_string(line_no) + ": torn final record skipped");
        break;
      }
      const std::string_view line(content.data() + pos, nl - pos);
      pos = nl + 1;
      if (line.empty()) continue;
      try {
        result.records.push_back(record_from_json(Json::parse(line)));
      } catch (const std::exception& e) {
        const std::string msg = "line " + std::to_string(line_no) + ": corrupt record (" + e.what() + ")";
        if (strict) throw FormatError(msg);
        result.warnings.push_back(msg + " skipped");
      }
    }
    return result;
  }

 private:
  void repair_torn_tail() {
    std::error_code ec;
    if (!std::filesystem::exists(path_, ec)) return;
    const auto size = std::filesystem::file_size(path_, ec);
    if (ec || size == 0) return;
    std::ifstream in(path_, std::ios::binary);
    in.seekg(-1, std::ios::end);
    if (in.get() == '\n') return;
    in.seekg(0);
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    in.close();
    const auto last_nl = content.rfind('\n');
    const std::uintmax_t keep = last_nl == std::string::npos ? 0 : last_nl + 1;
    std::filesystem::resize_file(path_, keep);
  }

  std::filesystem::path path_;
};

}  // namespace shs::io
