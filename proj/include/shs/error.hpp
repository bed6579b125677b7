#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace shs {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A value outside the domain of an operation (e.g. a score outside [-1, 1]).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A statistic is undefined for the given data (too few rows, zero variance).
class StatisticError : public Error {
 public:
  using Error::Error;
};

/// Input data (CSV, bundle, report, store) could not be decoded.
class FormatError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

struct Violation {
  enum class Kind { missing, unknown, out_of_range };

  Kind kind;
  std::string item;

  std::string message() const {
    switch (kind) {
      case Kind::missing:
        return "missing: " + item;
      case Kind::unknown:
        return "unknown item: " + item;
      case Kind::out_of_range:
        return "out of range: " + item;
    }
    return item;
  }

  bool operator==(const Violation&) const = default;
};

inline const char* to_string(Violation::Kind kind) {
  switch (kind) {
    case Violation::Kind::missing:
      return "missing";
    case Violation::Kind::unknown:
      return "unknown";
    case Violation::Kind::out_of_range:
      return "out_of_range";
  }
  return "?";
}

/// Thrown when a response sheet is scored without passing validation.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<Violation> violations)
      : Error(join(violations)), violations_(std::move(violations)) {}

  const std::vector<Violation>& violations() const noexcept { return violations_; }

 private:
  static std::string join(const std::vector<Violation>& violations) {
    std::string out;
    for (const auto& v : violations) {
      if (!out.empty()) out += "; ";
      out += v.message();
    }
    return out;
  }

  std::vector<Violation> violations_;
};

}  // namespace shs
