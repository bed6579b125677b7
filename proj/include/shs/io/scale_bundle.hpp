#pragma once

// The scale bundle ("shs-scale/1") is a JSON document describing the
// instrument: id, version, languages, dimensions, Likert labels and items
// with localized texts. The shipped asset lives in data/shs-scale.json.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>

#include "shs/io/json_codec.hpp"
#include "shs/scale.hpp"

#ifndef SHS_DEFAULT_SCALE_BUNDLE
#define SHS_DEFAULT_SCALE_BUNDLE "data/shs-scale.json"
#endif

namespace shs::io {

inline constexpr std::string_view kScaleSchema = "shs-scale/1";
inline constexpr const char* kScaleBundleEnv = "SHS_SCALE_BUNDLE";

inline ScaleDefinition load_scale(std::string_view bundle) {
  Json doc;
  try {
    doc = Json::parse(bundle);
  } catch (const Json::parse_error& e) {
    throw FormatError(std::string("scale bundle is not valid JSON: ") + e.what());
  }
  try {
    if (doc.at("schema").get<std::string>() != kScaleSchema) {
      throw FormatError("unsupported scale bundle schema: " + doc.at("schema").get<std::string>());
    }
    ScaleDefinition::Parts parts;
    parts.id = doc.at("id").get<std::string>();
    parts.version = doc.at("version").get<std::string>();
    parts.languages = doc.at("languages").get<std::vector<std::string>>();
    for (const auto& d : doc.at("dimensions")) {
      parts.dimensions.push_back({d.at("key").get<std::string>(), d.at("name").get<std::string>()});
    }
    if (doc.contains("likert")) {
      for (const auto& l : doc.at("likert")) {
        LikertOption opt;
        opt.code = l.at("code").get<int>();
        opt.label = l.at("label").get<std::map<std::string, std::string>>();
        parts.likert.push_back(std::move(opt));
      }
    }
    for (const auto& i : doc.at("items")) {
      Item item;
      item.id = i.at("id").get<std::string>();
      const auto polarity = i.at("polarity").get<std::string>();
      if (polarity == "positive") {
        item.polarity = Polarity::positive;
      } else if (polarity == "negative") {
        item.polarity = Polarity::negative;
      } else {
        throw FormatError("item " + item.id + " has unknown polarity " + polarity);
      }
      item.dimension = i.at("dimension").get<std::string>();
      item.text = i.at("text").get<std::map<std::string, std::string>>();
      parts.items.push_back(std::move(item));
    }
    return ScaleDefinition::create(std::move(parts));
  } catch (const Json::exception& e) {
    throw FormatError(std::string("malformed scale bundle: ") + e.what());
  }
}

inline Json scale_to_json(const ScaleDefinition& scale) {
  Json dims = Json::array();
  for (const auto& d : scale.dimensions()) dims.push_back(Json{{"key", d.key}, {"name", d.name}});
  Json likert = Json::array();
  for (const auto& l : scale.likert()) likert.push_back(Json{{"code", l.code}, {"label", l.label}});
  Json items = Json::array();
  for (const auto& i : scale.items()) {
    items.push_back(
        Json{{"id", i.id}, {"polarity", to_string(i.polarity)}, {"dimension", i.dimension}, {"text", i.text}});
  }
  return Json{{"schema", kScaleSchema},  {"id", scale.id()},  {"version", scale.version()},
              {"languages", scale.languages()}, {"dimensions", dims}, {"likert", likert},
              {"items", items}};
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline ScaleDefinition load_scale_file(const std::filesystem::path& path) { return load_scale(read_file(path)); }

/// Bundle path from $SHS_SCALE_BUNDLE, else the compiled-in default.
inline std::filesystem::path default_scale_path() {
  if (const char* env = std::getenv(kScaleBundleEnv); env && *env) return env;
  return SHS_DEFAULT_SCALE_BUNDLE;
}

}  // namespace shs::io
