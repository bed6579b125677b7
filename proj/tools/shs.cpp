// shs: command-line front end for scoring, batch analysis, cohort simulation,
// questionnaire export and the collection service.
//
// Exit codes: 0 success, 1 internal error, 2 input or validation error.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "shs/analysis.hpp"
#include "shs/io/csv.hpp"
#include "shs/io/json_codec.hpp"
#include "shs/io/report.hpp"
#include "shs/io/scale_bundle.hpp"
#include "shs/scoring.hpp"
#include "shs/service.hpp"
#include "shs/service_http.hpp"
#include "shs/simulator.hpp"
#include "shs/version.hpp"

namespace {

using shs::io::Json;

constexpr int kExitInternal = 1;
constexpr int kExitInput = 2;

/// Input problem with a message for stderr; maps to exit code 2.
struct InputFailure {
  std::string message;
};

std::string fixed2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputFailure{"cannot write " + path};
  out << content;
}

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  try {
    return shs::io::read_file(path);
  } catch (const shs::Error& e) {
    throw InputFailure{e.what()};
  }
}

shs::ScaleDefinition load_bundle(const std::string& path) {
  try {
    return shs::io::load_scale_file(path.empty() ? shs::io::default_scale_path() : std::filesystem::path(path));
  } catch (const shs::Error& e) {
    throw InputFailure{std::string("scale bundle: ") + e.what()};
  }
}

// -- score -----------------------------------------------------------------------

struct ScoreArgs {
  std::string input;
  std::string answers;
  std::string output;
  bool json = false;
};

std::string render_result(const shs::ShsResult& r, const shs::ScaleDefinition& scale,
                          const std::optional<std::string>& participant) {
  std::ostringstream out;
  if (participant) out << "Participant: " << *participant << "\n";
  for (std::size_t d = 0; d < shs::kDimensionCount; ++d) {
    const auto& dim = r.dimensions[d];
    char line[160];
    std::snprintf(line, sizeof line, "  %-2s %-28s score %5s  consistency %5s  %s\n", dim.dimension.c_str(),
                  scale.dimensions()[d].name.c_str(), fixed2(dim.score).c_str(), fixed2(dim.consistency).c_str(),
                  shs::to_string(dim.flag));
    out << line;
  }
  out << "Overall SHS Score: " << fixed2(r.overall) << "\n";
  out << "Overall Consistency: " << fixed2(r.overall_consistency) << "\n";
  out << "SHS100: " << fixed2(r.shs100) << "\n";
  const auto& band = shs::interpret(r.overall);
  out << "Interpretation: " << shs::to_string(band.label) << " (" << band.description << ")\n";
  return out.str();
}

std::vector<shs::ResponseSheet> score_inputs(const ScoreArgs& args) {
  if (!args.answers.empty()) {
    shs::ResponseSheet sheet;
    std::stringstream ss(args.answers);
    std::string cell;
    std::size_t i = 0;
    while (std::getline(ss, cell, ',')) {
      ++i;
      try {
        std::size_t used = 0;
        const int v = std::stoi(cell, &used);
        if (used != cell.size()) throw std::invalid_argument(cell);
        sheet.answers["q" + std::to_string(i)] = v;
      } catch (const std::exception&) {
        throw InputFailure{"not an integer: q" + std::to_string(i)};
      }
    }
    return {sheet};
  }
  const std::string text = read_input(args.input);
  const bool is_csv = args.input.size() >= 4 && args.input.substr(args.input.size() - 4) == ".csv";
  if (is_csv) {
    try {
      auto parsed = shs::io::parse_csv(text, true);
      return parsed.sheets;
    } catch (const shs::Error& e) {
      throw InputFailure{e.what()};
    }
  }
  try {
    const Json j = Json::parse(text);
    auto decode = [](const Json& doc) {
      shs::ResponseSheet s;
      s.answers = shs::io::answers_from_json(doc.contains("answers") ? doc.at("answers") : doc);
      if (doc.contains("participant_id") && doc.at("participant_id").is_string()) {
        s.participant_id = doc.at("participant_id").get<std::string>();
      }
      return s;
    };
    std::vector<shs::ResponseSheet> out;
    if (j.is_array()) {
      for (const auto& doc : j) out.push_back(decode(doc));
    } else {
      out.push_back(decode(j));
    }
    return out;
  } catch (const Json::exception& e) {
    throw InputFailure{std::string("invalid JSON: ") + e.what()};
  } catch (const shs::Error& e) {
    throw InputFailure{e.what()};
  }
}

int cmd_score(const ScoreArgs& args, const shs::ScaleDefinition& scale) {
  if (args.input.empty() == args.answers.empty()) throw InputFailure{"score needs exactly one of FILE or --answers"};
  const auto sheets = score_inputs(args);
  bool invalid = false;
  for (std::size_t i = 0; i < sheets.size(); ++i) {
    for (const auto& v : shs::validate_sheet(sheets[i], scale)) {
      invalid = true;
      std::cerr << "sheet " << (i + 1) << ": " << v.message() << "\n";
    }
  }
  if (invalid) return kExitInput;

  Json docs = Json::array();
  std::string human;
  for (const auto& sheet : sheets) {
    const auto result = shs::score_sheet(sheet, scale);
    Json doc{{"schema", shs::service::kResultSchema}};
    doc["participant_id"] = sheet.participant_id ? Json(*sheet.participant_id) : Json(nullptr);
    doc["result"] = shs::io::to_json(result);
    docs.push_back(std::move(doc));
    if (!human.empty()) human += "\n";
    human += render_result(result, scale, sheet.participant_id);
  }
  const std::string machine = (docs.size() == 1 ? docs[0] : docs).dump(2) + "\n";
  if (args.json) {
    write_output(args.output, machine);
    return 0;
  }
  std::cout << human;
  if (!args.output.empty()) write_output(args.output, machine);
  return 0;
}

// -- analyze ---------------------------------------------------------------------

struct AnalyzeArgs {
  std::string input;
  std::string output;
  bool strict = false;
  bool per_sheet = false;
  bool timestamp = false;
  std::optional<int> precision;
};

std::string summarize(const shs::io::AnalysisReport& report, std::size_t rejected) {
  std::ostringstream out;
  out << "Sheets analyzed: " << report.metadata.n;
  if (rejected) out << " (" << rejected << " rows rejected)";
  out << "\n";
  for (const auto& d : report.descriptives) {
    out << "  " << d.dimension << ": mean " << fixed2(d.stats.mean) << ", sd "
        << (d.stats.sd ? fixed2(*d.stats.sd) : std::string("n/a")) << "\n";
  }
  if (report.reliability.value) {
    const auto& r = *report.reliability.value;
    out << "Cronbach's alpha: " << fixed2(r.alpha) << " (95% CI " << fixed2(r.ci_low) << " to " << fixed2(r.ci_high)
        << ")\n";
  } else {
    out << "Cronbach's alpha: insufficient data (" << report.reliability.reason << ")\n";
  }
  if (report.normality.value) {
    out << "Shapiro-Wilk W (overall): " << fixed2(report.normality.value->w) << "\n";
  } else {
    out << "Shapiro-Wilk: insufficient data (" << report.normality.reason << ")\n";
  }
  return out.str();
}

int cmd_analyze(const AnalyzeArgs& args, const shs::ScaleDefinition& scale) {
  shs::io::ParsedCsv parsed;
  try {
    parsed = shs::io::parse_csv(read_input(args.input), args.strict);
  } catch (const shs::FormatError& e) {
    throw InputFailure{e.what()};
  }
  for (const auto& err : parsed.errors) std::cerr << "line " << err.line << ": " << err.reason << "\n";
  if (parsed.sheets.empty()) throw InputFailure{"no valid rows to analyze"};

  shs::AnalysisOptions opts;
  opts.include_per_sheet = args.per_sheet;
  if (args.timestamp) opts.generated_at = shs::io::format_utc(shs::io::utc_now());
  const auto report = shs::analyze(parsed.sheets, scale, opts);
  shs::io::EmitOptions emit;
  emit.precision = args.precision;
  const std::string doc = shs::io::emit_report(report, emit);
  const std::string summary = summarize(report, parsed.errors.size());
  if (args.output.empty() || args.output == "-") {
    std::cout << doc;
    std::cerr << summary;
  } else {
    write_output(args.output, doc);
    std::cout << summary;
  }
  return 0;
}

// -- simulate --------------------------------------------------------------------

struct SimulateArgs {
  std::size_t n = 210;
  std::uint64_t seed = 1;
  std::vector<double> mean{0.0};
  double spread = 0.4;
  double noise = 0.2;
  double careless = 0.0;
  double coupling = 0.6;
  std::string output;
};

int cmd_simulate(const SimulateArgs& args, const shs::ScaleDefinition& scale) {
  shs::sim::SimConfig config;
  config.n_participants = args.n;
  config.seed = args.seed;
  if (args.mean.size() != 1 && args.mean.size() != shs::kDimensionCount) {
    throw InputFailure{"--mean takes 1 or 5 values"};
  }
  for (std::size_t d = 0; d < shs::kDimensionCount; ++d) {
    config.latent_mean[d] = args.mean.size() == 1 ? args.mean[0] : args.mean[d];
  }
  config.latent_spread = args.spread;
  config.noise = args.noise;
  config.careless_rate = args.careless;
  config.coupling = args.coupling;
  try {
    config.validate();
  } catch (const shs::ConfigError& e) {
    throw InputFailure{e.what()};
  }
  const auto cohort = shs::sim::simulate(config, scale);
  const auto csv = shs::io::emit_csv(cohort.sheets());

  std::ostringstream summary;
  std::size_t careless = 0;
  for (bool c : cohort.careless) careless += c ? 1 : 0;
  summary << "Simulated " << config.n_participants << " participants (seed " << config.seed << ")\n";
  summary << "  latent means:";
  for (double mu : config.latent_mean) summary << " " << fixed2(mu);
  summary << "\n  spread " << fixed2(config.latent_spread) << ", noise " << fixed2(config.noise) << ", coupling "
          << fixed2(config.coupling) << ", careless rate " << fixed2(config.careless_rate) << " (" << careless
          << " careless)\n";
  if (args.output.empty() || args.output == "-") {
    std::cout << csv;
    std::cerr << summary.str();
  } else {
    write_output(args.output, csv);
    std::cout << summary.str();
  }
  return 0;
}

// -- questionnaire ---------------------------------------------------------------

int cmd_questionnaire(const std::string& lang, const shs::ScaleDefinition& scale) {
  if (!scale.supports(lang)) {
    std::string tags;
    for (const auto& t : scale.languages()) tags += (tags.empty() ? "" : ", ") + t;
    throw InputFailure{"unsupported language: " + lang + " (supported: " + tags + ")"};
  }
  std::size_t n = 0;
  for (const auto& item : scale.items()) std::cout << ++n << ". " << item.text.at(lang) << "\n";
  return 0;
}

// -- serve -----------------------------------------------------------------------

struct ServeArgs {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string store = "shs-responses.ndjson";
  std::string token;
};

int cmd_serve(const ServeArgs& args, const shs::ScaleDefinition& scale) {
  shs::service::ServiceOptions opts;
  opts.store_path = args.store;
  if (!args.token.empty()) opts.report_token = args.token;
  std::optional<shs::service::CollectionService> service;
  try {
    service.emplace(scale, opts);
  } catch (const shs::Error& e) {
    throw InputFailure{e.what()};
  }
  for (const auto& w : service->load_warnings()) std::cerr << "store: " << w << "\n";
  httplib::Server server;
  shs::service::bind_routes(server, *service);
  std::cerr << "listening on " << args.host << ":" << args.port << " (store " << args.store << ")\n";
  if (!server.listen(args.host, args.port)) {
    std::cerr << "error: cannot listen on " << args.host << ":" << args.port << "\n";
    return kExitInput;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"System Hallucination Scale toolkit"};
  app.set_version_flag("--version", std::string(shs::kToolVersion));
  app.require_subcommand(1);
  std::string bundle;
  app.add_option("--bundle", bundle, "Scale bundle (JSON)")->envname(shs::io::kScaleBundleEnv);

  ScoreArgs score;
  auto* score_cmd = app.add_subcommand("score", "Score response sheets");
  score_cmd->add_option("file", score.input, "Sheet JSON ({\"answers\": {...}}, or an array) or response CSV; - for stdin");
  score_cmd->add_option("--answers", score.answers, "Ten comma-separated answers, q1..q10");
  score_cmd->add_flag("--json", score.json, "Print the machine-readable document instead of the summary");
  score_cmd->add_option("-o,--output", score.output, "Write the machine-readable document here");

  AnalyzeArgs analyze;
  auto* analyze_cmd = app.add_subcommand("analyze", "Analyze a response CSV");
  analyze_cmd->add_option("file", analyze.input, "Response CSV; - for stdin")->required();
  analyze_cmd->add_option("-o,--output", analyze.output, "Report path (default: stdout)");
  analyze_cmd->add_flag("--strict", analyze.strict, "Abort on the first invalid row");
  analyze_cmd->add_flag("--include-per-sheet", analyze.per_sheet, "Include every sheet's scores");
  analyze_cmd->add_flag("--timestamp", analyze.timestamp, "Record generation time in the report");
  analyze_cmd->add_option("--precision", analyze.precision, "Round report numbers to this many decimals")
      ->check(CLI::Range(0, 17));

  SimulateArgs simulate;
  auto* simulate_cmd = app.add_subcommand("simulate", "Generate a synthetic cohort as response CSV");
  simulate_cmd->add_option("--n", simulate.n, "Participants")->check(CLI::Range(std::size_t{1}, std::size_t{10000000}));
  simulate_cmd->add_option("--seed", simulate.seed, "Generator seed");
  simulate_cmd->add_option("--mean", simulate.mean, "Latent mean, one value or one per dimension")
      ->expected(1, 5)
      ->check(CLI::Range(-1.0, 1.0));
  simulate_cmd->add_option("--spread", simulate.spread, "Latent spread tau")->check(CLI::NonNegativeNumber);
  simulate_cmd->add_option("--noise", simulate.noise, "Response noise sigma")->check(CLI::NonNegativeNumber);
  simulate_cmd->add_option("--careless-rate", simulate.careless, "Share of careless participants")
      ->check(CLI::Range(0.0, 1.0));
  simulate_cmd->add_option("--coupling", simulate.coupling, "Correlation of latents across dimensions")
      ->check(CLI::Range(0.0, 1.0));
  simulate_cmd->add_option("-o,--output", simulate.output, "CSV path (default: stdout)");

  std::string lang = "en";
  auto* questionnaire_cmd = app.add_subcommand("questionnaire", "Print the ten items");
  questionnaire_cmd->add_option("--lang", lang, "Language tag");

  ServeArgs serve;
  auto* serve_cmd = app.add_subcommand("serve", "Run the collection service");
  serve_cmd->add_option("--host", serve.host, "Bind address");
  serve_cmd->add_option("--port", serve.port, "Port")->envname("SHS_PORT")->check(CLI::Range(0, 65535));
  serve_cmd->add_option("--store", serve.store, "Response store path")->envname("SHS_STORE");
  serve_cmd->add_option("--token", serve.token, "Bearer token guarding /report and /export")->envname("SHS_TOKEN");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    const auto scale = load_bundle(bundle);
    if (*score_cmd) return cmd_score(score, scale);
    if (*analyze_cmd) return cmd_analyze(analyze, scale);
    if (*simulate_cmd) return cmd_simulate(simulate, scale);
    if (*questionnaire_cmd) return cmd_questionnaire(lang, scale);
    if (*serve_cmd) return cmd_serve(serve, scale);
  } catch (const InputFailure& f) {
    std::cerr << "error: " << f.message << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}
