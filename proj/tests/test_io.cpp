#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "shs/analysis.hpp"
#include "shs/io/csv.hpp"
#include "shs/io/json_codec.hpp"
#include "shs/io/report.hpp"
#include "shs/io/scale_bundle.hpp"
#include "shs/simulator.hpp"
#include "support.hpp"

using namespace shs;
using namespace shs::io;
using Catch::Matchers::ContainsSubstring;

namespace {

const char* kHeader = "participant_id,q1,q2,q3,q4,q5,q6,q7,q8,q9,q10\n";

Json bundle_json() { return Json::parse(read_file(default_scale_path())); }

}  // namespace

TEST_CASE("CSV parses the reference row", "[io]") {
  const auto parsed = parse_csv(std::string(kHeader) + "p1,1,-1,0,0,2,-2,1,-1,1,0\n");
  REQUIRE(parsed.sheets.size() == 1);
  CHECK(parsed.errors.empty());
  CHECK(parsed.sheets[0].participant_id == "p1");
  CHECK(parsed.sheets[0].answers.at("q5") == 2);
  CHECK(parsed.sheets[0].answers.at("q10") == 0);
  CHECK(score_sheet(parsed.sheets[0], testing::scale()).shs100 == 72.5);
}

TEST_CASE("CSV collects bad rows with line numbers", "[io]") {
  const std::string text = std::string(kHeader) +
                           "a,1,1,1,1,1,1,1,1,1,1\n"
                           "b,1,x,1,1,1,1,1,1,1,1\n"
                           "c,1,1,1,1,1,1,1,1,1,3\n"
                           "d,1,1,1,1,1,1,1,1,1,\n"
                           "e,1,1\n"
                           "f,0,0,0,0,0,0,0,0,0,0\n";
  const auto parsed = parse_csv(text);
  CHECK(parsed.sheets.size() == 2);
  REQUIRE(parsed.errors.size() == 4);
  CHECK(parsed.errors[0] == CsvRowError{3, "not an integer: q2"});
  CHECK(parsed.errors[1] == CsvRowError{4, "out of range: q10"});
  CHECK(parsed.errors[2] == CsvRowError{5, "missing value: q10"});
  CHECK(parsed.errors[3].line == 6);

  CHECK_THROWS_WITH(parse_csv(text, true), ContainsSubstring("line 3"));
}

TEST_CASE("CSV header problems are fatal", "[io]") {
  CHECK_THROWS_AS(parse_csv(""), FormatError);
  CHECK_THROWS_AS(parse_csv("id,q1,q2\n1,2,3\n"), FormatError);
  CHECK_THROWS_AS(parse_csv("participant_id,q2,q1,q3,q4,q5,q6,q7,q8,q9,q10\n"), FormatError);
  CHECK(parse_csv(kHeader).sheets.empty());
}

TEST_CASE("CSV tolerates BOM, CRLF and a missing final newline", "[io]") {
  const std::string text = "\xEF\xBB\xBFparticipant_id,q1,q2,q3,q4,q5,q6,q7,q8,q9,q10\r\n"
                           "p1,1,-1,0,0,2,-2,1,-1,1,0\r\n"
                           "p2,0,0,0,0,0,0,0,0,0,0";
  const auto parsed = parse_csv(text);
  CHECK(parsed.errors.empty());
  REQUIRE(parsed.sheets.size() == 2);
  CHECK(parsed.sheets[1].participant_id == "p2");
  CHECK(parsed.sheets[0].answers.at("q10") == 0);
}

TEST_CASE("CSV metadata columns and quoting", "[io]") {
  const std::string text =
      "participant_id,q1,q2,q3,q4,q5,q6,q7,q8,q9,q10,system,note\n"
      "\"p,1\",1,-1,0,0,2,-2,1,-1,1,0,gpt,\"said \"\"hi\"\"\nthen left\"\n"
      ",0,0,0,0,0,0,0,0,0,0,,\n";
  const auto parsed = parse_csv(text);
  CHECK(parsed.errors.empty());
  CHECK(parsed.metadata_columns == std::vector<std::string>{"system", "note"});
  REQUIRE(parsed.sheets.size() == 2);
  CHECK(parsed.sheets[0].participant_id == "p,1");
  CHECK(parsed.sheets[0].metadata == std::vector<std::string>{"gpt", "said \"hi\"\nthen left"});
  CHECK_FALSE(parsed.sheets[1].participant_id.has_value());

  const auto again = parse_csv(emit_csv(parsed.sheets, parsed.metadata_columns));
  CHECK(again.sheets == parsed.sheets);
  CHECK(again.metadata_columns == parsed.metadata_columns);

  CHECK_THROWS_AS(parse_csv(std::string(kHeader) + "\"open,1,1,1,1,1,1,1,1,1,1\n"), FormatError);
}

TEST_CASE("parse after emit is the identity on random sheets", "[io]") {
  std::mt19937_64 gen(77);
  std::uniform_int_distribution<int> code(kLikertMin, kLikertMax);
  std::vector<ResponseSheet> sheets;
  for (int i = 0; i < 300; ++i) {
    std::array<int, kItemCount> v{};
    for (auto& x : v) x = code(gen);
    sheets.push_back(make_sheet(v, "id-" + std::to_string(i)));
  }
  const auto text = emit_csv(sheets);
  const auto parsed = parse_csv(text);
  CHECK(parsed.errors.empty());
  CHECK(parsed.sheets == sheets);
  CHECK(emit_csv(parsed.sheets) == text);
}

TEST_CASE("scale bundle loads and validates", "[io]") {
  const auto& scale = testing::scale();
  CHECK(scale.items().size() == 10);
  CHECK(scale.dimensions().size() == 5);
  CHECK(scale.languages() == std::vector<std::string>{"en", "de", "fr"});
  CHECK(scale.likert().size() == 5);
  CHECK(scale.positive_item(0).id == "q1");
  CHECK(scale.negative_item(4).id == "q10");
  CHECK(load_scale(scale_to_json(scale).dump()) == scale);

  auto two_positive = bundle_json();
  two_positive["items"][1]["polarity"] = "positive";
  CHECK_THROWS_AS(load_scale(two_positive.dump()), FormatError);

  auto missing_text = bundle_json();
  missing_text["items"][6]["text"].erase("fr");
  CHECK_THROWS_WITH(load_scale(missing_text.dump()), ContainsSubstring("q7"));

  auto bad_schema = bundle_json();
  bad_schema["schema"] = "shs-scale/9";
  CHECK_THROWS_AS(load_scale(bad_schema.dump()), FormatError);

  CHECK_THROWS_AS(load_scale("{"), FormatError);
  CHECK_THROWS_AS(load_scale("{}"), FormatError);
}

TEST_CASE("timestamps round-trip", "[io]") {
  const auto t = parse_utc("2024-03-05T07:08:09Z");
  CHECK(format_utc(t) == "2024-03-05T07:08:09Z");
  CHECK_THROWS_AS(parse_utc("2024-03-05 07:08:09"), FormatError);
}

TEST_CASE("result JSON round-trips", "[io]") {
  const auto r = score_sheet(make_sheet({1, -1, 0, 0, 2, -2, 1, -1, 1, 0}), testing::scale());
  const auto j = to_json(r);
  CHECK(j.at("shs100") == 72.5);
  CHECK(j.at("band") == "moderate");
  CHECK(j.at("dimensions")[2].at("score") == 1.0);
  CHECK(shs_result_from_json(Json::parse(j.dump())) == r);

  CHECK_THROWS_AS(answers_from_json(Json::parse(R"({"q1": "2"})")), FormatError);
  CHECK_THROWS_AS(answers_from_json(Json::parse(R"({"q1": 1.5})")), FormatError);
  CHECK(answers_from_json(Json::parse(R"({"q1": 99999})")).at("q1") == 1000);
}

TEST_CASE("report emission is deterministic and round-trips", "[io]") {
  sim::SimConfig cfg;
  cfg.seed = 3;
  const auto sheets = sim::simulate(cfg, testing::scale()).sheets();
  AnalysisOptions opts;
  opts.include_per_sheet = true;
  const auto report = analyze(sheets, testing::scale(), opts);
  const auto text = emit_report(report);
  CHECK(emit_report(analyze(sheets, testing::scale(), opts)) == text);
  CHECK(parse_report(text) == report);
  CHECK(emit_report(parse_report(text)) == text);
  CHECK(text.find("generated_at") == std::string::npos);

  opts.generated_at = "2024-01-01T00:00:00Z";
  CHECK_THAT(emit_report(analyze(sheets, testing::scale(), opts)), ContainsSubstring("\"generated_at\""));

  // small N: insufficient sections survive the round-trip
  const auto small = analyze(std::vector<ResponseSheet>{sheets[0], sheets[1]}, testing::scale());
  const auto small_text = emit_report(small);
  CHECK_THAT(small_text, ContainsSubstring("insufficient_data"));
  CHECK(parse_report(small_text) == small);
}

TEST_CASE("report precision and non-finite numbers", "[io]") {
  const auto report = analyze(std::vector<ResponseSheet>{make_sheet({1, -1, 0, 0, 2, -2, 1, -1, 1, 0}),
                                                         make_sheet({0, 1, 2, 0, -1, 0, 1, 1, 0, 2}),
                                                         make_sheet({2, -2, 1, -1, 0, 0, 1, 0, -1, 1})},
                              testing::scale());
  const auto j = Json::parse(emit_report(report, EmitOptions{3, 2}));
  const double mean = j.at("descriptives")[5].at("mean").get<double>();
  CHECK(mean == std::round(report.descriptives[5].stats.mean * 1000) / 1000);

  auto broken = report;
  broken.descriptives[0].stats.mean = std::nan("");
  CHECK_THROWS_AS(emit_report(broken), FormatError);
  broken.descriptives[0].stats.mean = INFINITY;
  CHECK_THROWS_AS(emit_report(broken), FormatError);

  CHECK_THROWS_AS(parse_report("not json"), FormatError);
}
