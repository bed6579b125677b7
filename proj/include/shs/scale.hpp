#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "shs/error.hpp"

namespace shs {

inline constexpr std::size_t kItemCount = 10;
inline constexpr std::size_t kDimensionCount = 5;
inline constexpr int kLikertMin = -2;
inline constexpr int kLikertMax = 2;

enum class Polarity { positive, negative };

inline const char* to_string(Polarity p) {
  return p == Polarity::positive ? "positive" : "negative";
}

struct Dimension {
  std::string key;   // short code, e.g. "FA"
  std::string name;  // display name, e.g. "Factual Accuracy"

  bool operator==(const Dimension&) const = default;
};

struct Item {
  std::string id;  // q1..q10
  Polarity polarity = Polarity::positive;
  std::string dimension;                     // Dimension::key
  std::map<std::string, std::string> text;   // language tag -> wording

  bool operator==(const Item&) const = default;
};

/// One point of the five-point agreement scale and its localized labels.
struct LikertOption {
  int code = 0;
  std::map<std::string, std::string> label;

  bool operator==(const LikertOption&) const = default;
};

/// The instrument: ten items, five dimensions, one positive and one negative
/// item per dimension, localized texts. Instances are immutable and always
/// satisfy the structural invariants checked by create().
class ScaleDefinition {
 public:
  struct Parts {
    std::string id;
    std::string version;
    std::vector<std::string> languages;
    std::vector<Dimension> dimensions;
    std::vector<Item> items;
    std::vector<LikertOption> likert;
  };

  /// Validates and builds a definition. Every structural problem is collected
  /// and reported together in a FormatError.
  static ScaleDefinition create(Parts parts) {
    std::vector<std::string> problems;
    auto fail = [&](std::string msg) { problems.push_back(std::move(msg)); };

    if (parts.id.empty()) fail("scale id is empty");
    if (parts.languages.empty()) fail("no languages declared");
    for (std::size_t i = 0; i < parts.languages.size(); ++i) {
      for (std::size_t j = i + 1; j < parts.languages.size(); ++j) {
        if (parts.languages[i] == parts.languages[j]) fail("duplicate language: " + parts.languages[i]);
      }
    }

    if (parts.dimensions.size() != kDimensionCount) {
      fail("expected 5 dimensions, found " + std::to_string(parts.dimensions.size()));
    }
    for (std::size_t i = 0; i < parts.dimensions.size(); ++i) {
      for (std::size_t j = i + 1; j < parts.dimensions.size(); ++j) {
        if (parts.dimensions[i].key == parts.dimensions[j].key) {
          fail("duplicate dimension: " + parts.dimensions[i].key);
        }
      }
    }

    for (std::size_t i = 0; i < parts.items.size(); ++i) {
      for (std::size_t j = i + 1; j < parts.items.size(); ++j) {
        if (parts.items[i].id == parts.items[j].id) fail("duplicate item id: " + parts.items[i].id);
      }
    }
    if (parts.items.size() != kItemCount) {
      fail("expected 10 items, found " + std::to_string(parts.items.size()));
    }
    for (std::size_t i = 0; i < parts.items.size(); ++i) {
      const auto expected = "q" + std::to_string(i + 1);
      if (parts.items[i].id != expected) {
        fail("item " + std::to_string(i + 1) + " must have id " + expected + ", found " + parts.items[i].id);
      }
    }

    // Each dimension owns exactly one positive and one negative item.
    for (const auto& dim : parts.dimensions) {
      int pos = 0;
      int neg = 0;
      for (const auto& item : parts.items) {
        if (item.dimension != dim.key) continue;
        (item.polarity == Polarity::positive ? pos : neg) += 1;
      }
      if (pos != 1 || neg != 1) {
        fail("dimension " + dim.key + " needs exactly one positive and one negative item (has " +
             std::to_string(pos) + " positive, " + std::to_string(neg) + " negative)");
      }
    }
    for (const auto& item : parts.items) {
      bool known = std::any_of(parts.dimensions.begin(), parts.dimensions.end(),
                               [&](const Dimension& d) { return d.key == item.dimension; });
      if (!known) fail("item " + item.id + " references unknown dimension " + item.dimension);
    }
    // Canonical pairing: dimension d owns (q(2d+1) positive, q(2d+2) negative).
    if (parts.items.size() == kItemCount && parts.dimensions.size() == kDimensionCount) {
      for (std::size_t d = 0; d < kDimensionCount; ++d) {
        const auto& p = parts.items[2 * d];
        const auto& n = parts.items[2 * d + 1];
        const auto& key = parts.dimensions[d].key;
        if (p.dimension != key || n.dimension != key || p.polarity != Polarity::positive ||
            n.polarity != Polarity::negative) {
          fail("dimension " + key + " must pair " + p.id + " (positive) with " + n.id + " (negative)");
        }
      }
    }

    for (const auto& item : parts.items) {
      for (const auto& lang : parts.languages) {
        auto it = item.text.find(lang);
        if (it == item.text.end() || it->second.empty()) fail("item " + item.id + " has no text for language " + lang);
      }
    }

    if (!parts.likert.empty()) {
      if (parts.likert.size() != 5) fail("expected 5 Likert options");
      for (std::size_t i = 0; i < parts.likert.size(); ++i) {
        if (parts.likert[i].code != kLikertMin + static_cast<int>(i)) fail("Likert options must be ordered -2..+2");
        for (const auto& lang : parts.languages) {
          if (!parts.likert[i].label.count(lang)) {
            fail("Likert option " + std::to_string(parts.likert[i].code) + " has no label for language " + lang);
          }
        }
      }
    }

    if (!problems.empty()) {
      std::string msg = "invalid scale definition: ";
      for (std::size_t i = 0; i < problems.size(); ++i) {
        if (i) msg += "; ";
        msg += problems[i];
      }
      throw FormatError(msg);
    }
    return ScaleDefinition(std::move(parts));
  }

  const std::string& id() const noexcept { return parts_.id; }
  const std::string& version() const noexcept { return parts_.version; }
  const std::vector<std::string>& languages() const noexcept { return parts_.languages; }
  const std::vector<Dimension>& dimensions() const noexcept { return parts_.dimensions; }
  const std::vector<Item>& items() const noexcept { return parts_.items; }
  const std::vector<LikertOption>& likert() const noexcept { return parts_.likert; }

  bool supports(std::string_view language) const {
    return std::find(parts_.languages.begin(), parts_.languages.end(), language) != parts_.languages.end();
  }

  const Item& positive_item(std::size_t dimension) const { return parts_.items.at(2 * dimension); }
  const Item& negative_item(std::size_t dimension) const { return parts_.items.at(2 * dimension + 1); }

  std::optional<std::size_t> item_index(std::string_view id) const {
    for (std::size_t i = 0; i < parts_.items.size(); ++i) {
      if (parts_.items[i].id == id) return i;
    }
    return std::nullopt;
  }

  bool operator==(const ScaleDefinition& other) const {
    return parts_.id == other.parts_.id && parts_.version == other.parts_.version &&
           parts_.languages == other.parts_.languages && parts_.dimensions == other.parts_.dimensions &&
           parts_.items == other.parts_.items && parts_.likert == other.parts_.likert;
  }

 private:
  explicit ScaleDefinition(Parts parts) : parts_(std::move(parts)) {}

  Parts parts_;
};

}  // namespace shs
