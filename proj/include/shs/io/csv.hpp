#pragma once

// Response CSV: header `participant_id,q1,...,q10` followed by optional
// metadata columns that are carried through but never analyzed. Comma
// separator, `\n` or `\r\n` line endings on input, `\n` on output, RFC 4180
// double-quote escaping for fields that need it.

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "shs/error.hpp"
#include "shs/scale.hpp"
#include "shs/scoring.hpp"

namespace shs::io {

inline const std::vector<std::string>& csv_required_columns() {
  static const std::vector<std::string> cols = [] {
    std::vector<std::string> c{"participant_id"};
    for (std::size_t i = 1; i <= kItemCount; ++i) c.push_back("q" + std::to_string(i));
    return c;
  }();
  return cols;
}

struct CsvRowError {
  std::size_t line;  // 1-based physical line number; the header is line 1
  std::string reason;

  bool operator==(const CsvRowError&) const = default;
};

struct ParsedCsv {
  std::vector<std::string> metadata_columns;
  std::vector<ResponseSheet> sheets;
  std::vector<CsvRowError> errors;
};

namespace detail {

struct CsvRecord {
  std::size_t line;
  std::vector<std::string> fields;
};

/// Splits text into records, honouring quoted fields (which may span lines).
inline std::vector<CsvRecord> split_records(std::string_view text) {
  std::vector<CsvRecord> out;
  std::size_t line = 1;
  std::size_t pos = 0;
  while (pos < text.size()) {
    CsvRecord rec{line, {}};
    std::string field;
    bool in_quotes = false;
    bool done = false;
    while (!done) {
      if (pos >= text.size()) {
        if (in_quotes) throw FormatError("line " + std::to_string(rec.line) + ": unterminated quoted field");
        rec.fields.push_back(std::move(field));
        break;
      }
      const char ch = text[pos++];
      if (in_quotes) {
        if (ch == '"') {
          if (pos < text.size() && text[pos] == '"') {
            field += '"';
            ++pos;
          } else {
            in_quotes = false;
          }
        } else {
          if (ch == '\n') ++line;
          field += ch;
        }
        continue;
      }
      switch (ch) {
        case '"':
          in_quotes = true;
          break;
        case ',':
          rec.fields.push_back(std::move(field));
          field.clear();
          break;
        case '\r':
          if (pos < text.size() && text[pos] == '\n') break;
          field += ch;
          break;
        case '\n':
          rec.fields.push_back(std::move(field));
          ++line;
          done = true;
          break;
        default:
          field += ch;
      }
    }
    const bool blank = rec.fields.size() == 1 && rec.fields[0].empty();
    if (!blank) out.push_back(std::move(rec));
  }
  return out;
}

inline bool needs_quoting(std::string_view s) {
  return s.find_first_of(",\"\r\n") != std::string_view::npos;
}

inline void append_field(std::string& out, std::string_view s) {
  if (!needs_quoting(s)) {
    out += s;
    return;
  }
  out += '"';
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
}

inline std::optional<int> parse_int(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  int v = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end || s.empty()) return std::nullopt;
  return v;
}

}  // namespace detail

/// Parses a response CSV. Bad rows are collected in `errors` unless `strict`,
/// in which case the first bad row throws FormatError. A malformed header is
/// always fatal.
inline ParsedCsv parse_csv(std::string_view text, bool strict = false) {
  if (text.size() >= 3 && text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);
  const auto records = detail::split_records(text);
  if (records.empty()) throw FormatError("CSV header missing: expected participant_id,q1,...,q10");
  const auto& header = records.front().fields;
  const auto& required = csv_required_columns();
  if (header.size() < required.size() ||
      !std::equal(required.begin(), required.end(), header.begin())) {
    throw FormatError("CSV header must start with participant_id,q1,...,q10");
  }

  ParsedCsv out;
  out.metadata_columns.assign(header.begin() + static_cast<std::ptrdiff_t>(required.size()), header.end());

  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    auto reject = [&](std::string reason) {
      if (strict) throw FormatError("line " + std::to_string(rec.line) + ": " + reason);
      out.errors.push_back({rec.line, std::move(reason)});
    };
    if (rec.fields.size() < required.size()) {
      reject("expected at least 11 columns, found " + std::to_string(rec.fields.size()));
      continue;
    }
    if (rec.fields.size() > header.size()) {
      reject("more columns than the header declares");
      continue;
    }
    ResponseSheet sheet;
    if (!rec.fields[0].empty()) sheet.participant_id = rec.fields[0];
    std::string problem;
    for (std::size_t i = 1; i <= kItemCount && problem.empty(); ++i) {
      const auto& cell = rec.fields[i];
      if (cell.empty()) {
        problem = "missing value: " + required[i];
      } else if (auto v = detail::parse_int(cell)) {
        if (!LikertValue::valid(*v)) {
          problem = "out of range: " + required[i];
        } else {
          sheet.answers[required[i]] = *v;
        }
      } else {
        problem = "not an integer: " + required[i];
      }
    }
    if (!problem.empty()) {
      reject(problem);
      continue;
    }
    sheet.metadata.assign(rec.fields.begin() + static_cast<std::ptrdiff_t>(required.size()), rec.fields.end());
    sheet.metadata.resize(out.metadata_columns.size());
    out.sheets.push_back(std::move(sheet));
  }
  return out;
}

inline std::string emit_csv(std::span<const ResponseSheet> sheets, const std::vector<std::string>& metadata_columns = {}) {
  std::string out;
  const auto& required = csv_required_columns();
  for (std::size_t i = 0; i < required.size(); ++i) {
    if (i) out += ',';
    out += required[i];
  }
  for (const auto& col : metadata_columns) {
    out += ',';
    detail::append_field(out, col);
  }
  out += '\n';
  for (const auto& sheet : sheets) {
    detail::append_field(out, sheet.participant_id.value_or(""));
    for (std::size_t i = 1; i <= kItemCount; ++i) {
      out += ',';
      out += std::to_string(sheet.answers.at(required[i]));
    }
    for (std::size_t m = 0; m < metadata_columns.size(); ++m) {
      out += ',';
      if (m < sheet.metadata.size()) detail::append_field(out, sheet.metadata[m]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace shs::io
