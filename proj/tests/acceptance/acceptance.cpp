// Acceptance checks, one per criterion. Usage: shs_acceptance <criterion>
// (or no argument for all). Prints one PASS/FAIL line per criterion and
// exits non-zero on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <mutex>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>

#include "live_server.hpp"
#include "oracles.hpp"
#include "shs/analysis.hpp"
#include "shs/io/csv.hpp"
#include "shs/io/report.hpp"
#include "shs/simulator.hpp"
#include "shs/stats/correlation.hpp"
#include "shs/stats/descriptive.hpp"
#include "shs/stats/goodness_of_fit.hpp"
#include "shs/stats/icc.hpp"
#include "shs/stats/reliability.hpp"
#include "shs/stats/shapiro_wilk.hpp"
#include "support.hpp"

using namespace shs;
using Json = io::Json;

namespace {

struct Outcome {
  bool passed;
  std::string detail;
};

std::string num(double v, int digits = 6) {
  std::ostringstream out;
  out.precision(digits);
  out << v;
  return out.str();
}

// Collects failed sub-checks; the first few are echoed in the detail line.
class Tally {
 public:
  void check(bool ok, const std::string& what) {
    ++total_;
    if (!ok) failures_.push_back(what);
  }
  Outcome outcome(const std::string& summary) const {
    if (failures_.empty()) return {true, summary + " (" + std::to_string(total_) + " checks)"};
    std::string d = std::to_string(failures_.size()) + "/" + std::to_string(total_) + " checks failed";
    for (std::size_t i = 0; i < std::min<std::size_t>(3, failures_.size()); ++i) d += "; " + failures_[i];
    return {false, d};
  }

 private:
  std::size_t total_ = 0;
  std::vector<std::string> failures_;
};

double d(oracle::Real x) { return static_cast<double>(x); }

bool near(double a, double b, double tol) { return std::fabs(a - b) <= tol; }

stats::DataMatrix to_matrix(const oracle::Columns& cols) {
  stats::DataMatrix m(cols[0].size(), cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (std::size_t r = 0; r < cols[c].size(); ++r) m(r, c) = cols[c][r];
  return m;
}

// -- reference example ----------------------------------------------------------------

Outcome reference_example() {
  const auto r = score_sheet(make_sheet({1, -1, 0, 0, 2, -2, 1, -1, 1, 0}), testing::scale());
  const std::array<double, 5> expected{0.5, 0.0, 1.0, 0.5, 0.25};
  Tally t;
  for (std::size_t i = 0; i < kDimensionCount; ++i) {
    t.check(near(r.dimensions[i].score, expected[i], 1e-12), r.dimensions[i].dimension + " = " + num(r.dimensions[i].score));
  }
  t.check(near(r.overall, 0.45, 1e-12), "overall = " + num(r.overall, 17));
  t.check(near(r.overall_consistency, 0.05, 1e-12), "consistency = " + num(r.overall_consistency, 17));
  t.check(near(r.shs100, 72.5, 1e-12), "shs100 = " + num(r.shs100, 17));
  t.check(r.band == Band::moderate, std::string("band = ") + to_string(r.band));
  return t.outcome("overall " + num(r.overall) + ", consistency " + num(r.overall_consistency) + ", SHS100 " +
                   num(r.shs100) + ", " + to_string(r.band));
}

// -- exhaustive sweep --------------------------------------------------------------------

Outcome exhaustive_sweep() {
  const auto& scale = testing::scale();
  const auto start = std::chrono::steady_clock::now();
  std::size_t sheets = 0;
  std::size_t bad = 0;
  std::string first_bad;
  auto fail = [&](const std::array<int, kItemCount>& v, const char* what) {
    if (bad++ == 0) {
      first_bad = what;
      for (int x : v) first_bad += " " + std::to_string(x);
    }
  };
  auto quarter = [](double x) { return std::fmod(x * 4.0, 1.0) == 0.0; };

  std::array<int, kItemCount> v;
  v.fill(kLikertMin);
  AnswerVector answers{LikertValue(0), LikertValue(0), LikertValue(0), LikertValue(0), LikertValue(0),
                       LikertValue(0), LikertValue(0), LikertValue(0), LikertValue(0), LikertValue(0)};
  while (true) {
    for (std::size_t i = 0; i < kItemCount; ++i) answers[i] = LikertValue(v[i]);
    const auto r = score_answers(answers, scale);
    ++sheets;
    int net = 0;
    for (std::size_t k = 0; k < kDimensionCount; ++k) {
      const int p = v[2 * k];
      const int n = v[2 * k + 1];
      net += p - n;
      const auto& dim = r.dimensions[k];
      if (dim.score < -1.0 || dim.score > 1.0 || dim.consistency < -1.0 || dim.consistency > 1.0) fail(v, "bounds");
      if (!quarter(dim.score) || !quarter(dim.consistency)) fail(v, "quantization");
      if (dim.score + dim.consistency != p / 2.0 || dim.consistency - dim.score != n / 2.0) fail(v, "s+c=p/2");
    }
    if (r.overall < -1.0 || r.overall > 1.0) fail(v, "overall bounds");
    if (std::fabs(r.overall - net / 20.0) > 1e-15) fail(v, "overall mean");
    if (std::fabs(r.overall * 20.0 - std::round(r.overall * 20.0)) > 1e-12) fail(v, "overall quantization");
    if (std::fabs(r.shs100 - 50.0 * (r.overall + 1.0)) > 1e-12) fail(v, "shs100");
    int hits = 0;
    Band hit = Band::moderate;
    for (const auto& b : kBands) {
      if (b.shs_range.contains(r.overall)) {
        ++hits;
        hit = b.label;
      }
    }
    if (hits != 1 || hit != r.band) fail(v, "band partition");

    std::size_t pos = 0;
    while (pos < kItemCount && v[pos] == kLikertMax) v[pos++] = kLikertMin;
    if (pos == kItemCount) break;
    ++v[pos];
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  // antisymmetry: swapping each pair negates scores and keeps consistency
  std::mt19937_64 gen(1);
  std::uniform_int_distribution<int> code(kLikertMin, kLikertMax);
  std::size_t anti_bad = 0;
  for (int s = 0; s < 10000; ++s) {
    std::array<int, kItemCount> a{};
    for (auto& x : a) x = code(gen);
    auto b = a;
    for (std::size_t k = 0; k < kDimensionCount; ++k) std::swap(b[2 * k], b[2 * k + 1]);
    const auto ra = score_sheet(make_sheet(a), scale);
    const auto rb = score_sheet(make_sheet(b), scale);
    bool ok = rb.overall == -ra.overall && rb.overall_consistency == ra.overall_consistency;
    for (std::size_t k = 0; k < kDimensionCount; ++k) {
      ok = ok && rb.dimensions[k].score == -ra.dimensions[k].score &&
           rb.dimensions[k].consistency == ra.dimensions[k].consistency;
    }
    if (!ok) ++anti_bad;
  }

  const bool passed = sheets == 9765625 && bad == 0 && anti_bad == 0 && seconds < 60.0;
  std::string detail = std::to_string(sheets) + " sheets in " + num(seconds, 3) + " s, " + std::to_string(bad) +
                       " invariant violations, " + std::to_string(anti_bad) + "/10000 antisymmetry failures";
  if (bad) detail += " (first: " + first_bad + ")";
  return {passed, detail};
}

// -- Feldt CI ------------------------------------------------------------------------------

Outcome feldt_ci() {
  const auto ci = stats::feldt_ci(0.87, 210, 10);
  const bool passed = near(ci.low, 0.84, 0.005) && near(ci.high, 0.90, 0.005);
  return {passed, "alpha 0.87, N 210, k 10 -> [" + num(ci.low, 8) + ", " + num(ci.high, 8) +
                      "]; target [0.84, 0.90] +/- 0.005"};
}

// -- statistics oracles ----------------------------------------------------------------------

Outcome statistics_oracles() {
  Tally t;
  constexpr double tol = 1e-10;
  constexpr double ptol = 1e-8;
  constexpr int fixtures = 25;

  for (int f = 0; f < fixtures; ++f) {
    const auto cols = oracle::likert_fixture(1000 + f, 8 + f % 9, 4 + f % 7);
    const auto m = to_matrix(cols);
    const std::string tag = " fixture " + std::to_string(f);

    t.check(near(stats::cronbach_alpha(m), d(oracle::cronbach_alpha(cols)), tol), "alpha" + tag);

    const auto items = stats::item_total(m);
    for (std::size_t c = 0; c < cols.size(); ++c) {
      std::vector<double> rest(cols[0].size(), 0.0);
      oracle::Columns others;
      for (std::size_t o = 0; o < cols.size(); ++o) {
        if (o == c) continue;
        others.push_back(cols[o]);
        for (std::size_t r = 0; r < rest.size(); ++r) rest[r] += cols[o][r];
      }
      if (stats::is_constant(cols[c]) || stats::is_constant(rest)) {
        t.check(!items[c].corrected_r.has_value(), "item-total undefined" + tag);
        continue;
      }
      t.check(near(*items[c].corrected_r, d(oracle::pearson(cols[c], rest)), tol), "item-total r" + tag);
      if (cols.size() > 2) {
        t.check(near(*items[c].alpha_if_deleted, d(oracle::cronbach_alpha(others)), tol), "alpha-if-deleted" + tag);
      }
    }

    const auto ms = oracle::anova(cols);
    const oracle::Real n = cols[0].size();
    const oracle::Real k = cols.size();
    const auto icc = stats::icc(m);
    t.check(near(icc.icc_single, d((ms.rows - ms.error) / (ms.rows + (k - 1) * ms.error + k * (ms.cols - ms.error) / n)), tol),
            "ICC(2,1)" + tag);
    t.check(near(icc.icc_average, d((ms.rows - ms.error) / (ms.rows + (ms.cols - ms.error) / n)), tol), "ICC(2,k)" + tag);

    const auto& x = cols[0];
    const auto& y = cols[1];
    if (!stats::is_constant(x) && !stats::is_constant(y)) {
      const auto c = stats::pearson(x, y);
      const double r = d(oracle::pearson(x, y));
      t.check(near(c.r, r, tol), "pearson r" + tag);
      if (std::fabs(r) < 1.0) {
        const double tstat = r * std::sqrt((x.size() - 2.0) / (1.0 - r * r));
        t.check(near(c.p_value, d(oracle::t_two_sided(tstat, x.size() - 2.0)), ptol), "pearson p" + tag);
      }
    }

    const auto desc = stats::describe(x);
    t.check(near(desc.mean, d(oracle::mean(x)), tol), "mean" + tag);
    t.check(near(*desc.sd, d(std::sqrt(oracle::variance(x))), tol), "sd" + tag);
    t.check(desc.median == d(oracle::median(x)), "median" + tag);
    t.check(desc.min == *std::min_element(x.begin(), x.end()) && desc.max == *std::max_element(x.begin(), x.end()),
            "min/max" + tag);
    if (!stats::is_constant(x) && x.size() >= 4) {
      const auto [g1, g2] = oracle::skew_kurtosis(x);
      const auto shape = stats::skew_kurtosis(x);
      t.check(near(shape.skewness, d(g1), tol) && near(shape.excess_kurtosis, d(g2), tol), "skew/kurtosis" + tag);
    }

    std::vector<double> obs(5, 0.0);
    for (const auto& col : cols)
      for (double v : col) obs[static_cast<std::size_t>(v + 2)] += 1.0;
    double total = 0.0;
    for (double o : obs) total += o;
    const std::vector<double> expd(5, total / 5.0);
    oracle::Real chi = 0;
    for (std::size_t i = 0; i < 5; ++i) chi += (obs[i] - (oracle::Real)expd[i]) * (obs[i] - (oracle::Real)expd[i]) / expd[i];
    const auto g = stats::chi_square_gof(obs, expd);
    t.check(near(g.chi_square, d(chi), tol), "chi-square" + tag);
    t.check(near(g.p_value, d(oracle::chi_square_sf(chi, 4)), ptol), "chi-square p" + tag);
  }

  // degenerate cases, exact
  stats::DataMatrix identical(7, 10);
  const std::array<double, 7> col{-2, 0, 1, 2, -1, 1, 0};
  for (std::size_t r = 0; r < 7; ++r)
    for (std::size_t c = 0; c < 10; ++c) identical(r, c) = col[r];
  const double a = stats::cronbach_alpha(identical);
  t.check(a == 1.0, "identical columns alpha = " + num(a, 17));
  const auto icc = stats::icc(identical);
  t.check(icc.icc_single == 1.0 && icc.icc_average == 1.0, "identical columns ICC");
  const std::vector<double> counts{12, 30, 7, 7, 44};
  const auto same = stats::chi_square_gof(counts, counts);
  t.check(same.chi_square == 0.0 && same.p_value == 1.0, "observed = expected");

  return t.outcome(std::to_string(fixtures) + " fixtures, tol 1e-10 / 1e-8; degenerate cases exact");
}

// -- Shapiro-Wilk ------------------------------------------------------------------------------

Outcome shapiro_wilk() {
  Tally t;
  const std::vector<double> weights{148, 154, 158, 160, 161, 162, 166, 170, 182, 195, 236};
  const auto ref = stats::shapiro_wilk(weights);
  t.check(near(ref.w, 0.7888, 1e-3), "W = " + num(ref.w));
  t.check(near(ref.p_value, 0.0067, 1e-3), "p = " + num(ref.p_value));

  sim::Rng rng(2718);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> x(20 + 13 * trial);
    for (auto& v : x) v = std::exp(rng.normal());
    std::vector<double> y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = -3.25 * x[i] + 1e3;
    t.check(near(stats::shapiro_wilk(y).w, stats::shapiro_wilk(x).w, 1e-9), "affine invariance");
  }

  int normal_rejections = 0;
  int bimodal_rejections = 0;
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    sim::Rng g(seed);
    std::vector<double> x(50);
    for (auto& v : x) v = g.normal();
    if (stats::shapiro_wilk(x).p_value < 0.05) ++normal_rejections;

    sim::Rng h(seed + 100000);
    std::vector<double> b(50);
    for (std::size_t i = 0; i < b.size(); ++i) b[i] = (i % 2 ? 4.0 : -4.0) + h.normal();
    if (stats::shapiro_wilk(b).p_value < 0.05) ++bimodal_rejections;
  }
  t.check(normal_rejections >= 2 && normal_rejections <= 20,
          "normal rejections " + std::to_string(normal_rejections) + "/200");
  t.check(bimodal_rejections > 180, "bimodal rejections " + std::to_string(bimodal_rejections) + "/200");

  return t.outcome("W " + num(ref.w, 5) + ", p " + num(ref.p_value, 4) + "; normal rejected " +
                   std::to_string(normal_rejections) + "/200, bimodal rejected " +
                   std::to_string(bimodal_rejections) + "/200");
}

// -- simulator round-trip ---------------------------------------------------------------------------

Outcome simulator_roundtrip() {
  sim::SimConfig config;
  config.n_participants = 500;
  config.noise = 0.2;
  config.latent_spread = 0.4;
  const auto summary = sim::roundtrip_check(config, testing::scale());
  std::string detail;
  for (const auto& c : summary.checks) {
    if (!detail.empty()) detail += "; ";
    detail += std::string(c.passed ? "" : "FAILED ") + c.name + " " + c.detail;
  }
  return {summary.passed(), detail};
}

// -- pipeline equivalence ---------------------------------------------------------------------------

Outcome pipeline_equivalence() {
  Tally t;
  testing::TempDir dir;
  sim::SimConfig config;
  config.seed = 210;
  const auto sheets = sim::simulate(config, testing::scale()).sheets();

  testing::LiveServer server(testing::scale(), service::ServiceOptions{dir / "store.ndjson", std::nullopt});
  auto client = server.client();
  for (const auto& s : sheets) {
    const Json body{{"language", "en"}, {"answers", io::answers_to_json(s)}};
    auto res = client.Post("/responses", body.dump(), "application/json");
    t.check(res && res->status == 201, "POST " + *s.participant_id);
  }
  auto report = client.Get("/report");
  auto exported = client.Get("/export");
  if (!report || report->status != 200 || !exported || exported->status != 200) {
    return {false, "service did not return report/export"};
  }
  testing::write_text(dir / "export.csv", exported->body);
  const auto cli = testing::run_cli("analyze \"" + (dir / "export.csv").string() + "\"");
  t.check(cli.exit_code == 0, "cli exit " + std::to_string(cli.exit_code));

  const auto from_service = io::parse_report(report->body);
  const auto from_cli = io::parse_report(cli.out);
  t.check(from_service.metadata.n == 210, "N = " + std::to_string(from_service.metadata.n));
  t.check(from_service == from_cli, "service report != cli report");
  t.check(report->body == cli.out, "report bytes differ");

  const auto direct = analyze(sheets, testing::scale());
  const auto first = io::emit_report(direct);
  const auto second = io::emit_report(analyze(sheets, testing::scale()));
  t.check(first == second, "emit_report not byte-deterministic");
  t.check(testing::run_cli("analyze \"" + (dir / "export.csv").string() + "\"").out == cli.out, "cli output differs across runs");
  return t.outcome("210-row cohort: GET /report == shs analyze(export.csv), " + std::to_string(report->body.size()) +
                   " bytes; emit_report byte-identical across runs");
}

// -- durability --------------------------------------------------------------------------------------

Outcome durability() {
  Tally t;
  testing::TempDir dir;
  const auto store_path = dir / "store.ndjson";
  std::size_t created = 0;
  std::vector<std::string> errors;
  {
    testing::LiveServer server(testing::scale(), service::ServiceOptions{store_path, std::nullopt});
    std::vector<std::thread> threads;
    std::mutex mu;
    for (int i = 0; i < 100; ++i) {
      threads.emplace_back([&, i] {
        auto client = server.client();
        const Json body{{"language", "en"},
                        {"nonce", "n" + std::to_string(i)},
                        {"answers", io::answers_to_json(make_sheet({i % 5 - 2, 0, 1, -1, 2, -2, 0, 0, 1, 1}))}};
        auto res = client.Post("/responses", body.dump(), "application/json");
        std::lock_guard lock(mu);
        if (res && res->status == 201) {
          ++created;
        } else if (errors.size() < 3) {
          errors.push_back(res ? "HTTP " + std::to_string(res->status) : httplib::to_string(res.error()));
        }
      });
    }
    for (auto& th : threads) th.join();
  }
  io::ResponseStore store(store_path);
  auto scan = store.scan(true);
  std::string why;
  for (const auto& e : errors) why += " " + e;
  t.check(created == 100, std::to_string(created) + " POSTs answered 201" + why);
  t.check(scan.records.size() == 100, std::to_string(scan.records.size()) + " records stored");
  std::set<std::string> ids;
  for (const auto& r : scan.records) ids.insert(r.id);
  t.check(ids.size() == 100, "duplicate ids");
  const auto before = scan.records;

  // simulate a crash mid-write
  testing::write_text(store_path, testing::read_text(store_path) + R"({"id":"sub-000101","language":"en","no)");
  scan = store.scan();
  t.check(scan.records == before, "earlier records changed after torn write");
  t.check(scan.warnings.size() == 1, std::to_string(scan.warnings.size()) + " warnings after torn write");
  service::CollectionService reloaded(testing::scale(), service::ServiceOptions{store_path, std::nullopt});
  t.check(reloaded.load_warnings().size() == 1, "service reload warning");
  t.check(reloaded.stored_sheets().size() == 100, "service reload count");
  t.check(reloaded.submit(R"({"answers":{"q1":0,"q2":0,"q3":0,"q4":0,"q5":0,"q6":0,"q7":0,"q8":0,"q9":0,"q10":0}})").status == 201,
          "append after torn write");
  scan = store.scan(true);
  t.check(scan.records.size() == 101 && scan.warnings.empty(), "store repaired on next append");
  return t.outcome("100 concurrent POSTs -> 100 records; torn tail skipped with 1 warning, 100 earlier records intact");
}

// -- localization ------------------------------------------------------------------------------------

struct ItemText {
  const char* lang;
  const char* id;
  const char* text;
};

const ItemText kItemTexts[] = {
    {"en", "q1", "The response was factually reliable."},
    {"en", "q2", "The LLM frequently generated false or fabricated information."},
    {"en", "q3", "It was easy to find and verify the sources of the presented information."},
    {"en", "q4", "The LLM often omitted sources or invented them, and it was difficult to recognize what was real."},
    {"en", "q5", "The LLM's reasoning was logically structured and supported by facts."},
    {"en", "q6", "The LLM's reasoning contained unfounded or illogical steps."},
    {"en", "q7", "False or fabricated information was easy to recognize."},
    {"en", "q8", "The LLM presented false information in a confident and misleading manner."},
    {"en", "q9", "I was able to prompt the LLM to provide more accurate answers when needed."},
    {"en", "q10", "The LLM ignored my instructions and continued to generate false information."},
    {"de", "q1", "Die Antwort war faktisch zuverlässig."},
    {"de", "q2", "Das LLM hat häufig falsche oder erfundene Informationen generiert."},
    {"de", "q3", "Es war einfach, die Quellen der präsentierten Informationen zu finden und zu verifizieren."},
    {"de", "q4", "Das LLM hat oft Quellen weggelassen oder erfunden, und es war schwierig zu erkennen, was real war."},
    {"de", "q5", "Die Argumentation des LLM war logisch strukturiert und durch Fakten gestützt."},
    {"de", "q6", "Die Argumentation des LLM enthielt unbegründete oder unlogische Schritte."},
    {"de", "q7", "Falsche oder erfundene Informationen waren leicht zu erkennen."},
    {"de", "q8", "Das LLM präsentierte falsche Informationen auf selbstbewusste und irreführende Weise."},
    {"de", "q9", "Ich konnte das LLM auffordern, bei Bedarf genauere Antworten zu geben."},
    {"de", "q10", "Das LLM ignorierte meine Anweisungen und generierte weiterhin falsche Informationen."},
    {"fr", "q1", "La réponse était factuellement fiable."},
    {"fr", "q2", "Le LLM a fréquemment généré des informations fausses ou fabriquées."},
    {"fr", "q3", "Il était facile de trouver et de vérifier les sources des informations présentées."},
    {"fr", "q4", "Le LLM a souvent omis des sources ou les a inventées, et il était difficile de reconnaître ce qui était réel."},
    {"fr", "q5", "Le raisonnement du LLM était logiquement structuré et soutenu par des faits."},
    {"fr", "q6", "Le raisonnement du LLM contenait des étapes non fondées ou illogiques."},
    {"fr", "q7", "Les informations fausses ou fabriquées étaient faciles à reconnaître."},
    {"fr", "q8", "Le LLM présentait des informations fausses de manière confiante et trompeuse."},
    {"fr", "q9", "J'ai pu inviter le LLM à fournir des réponses plus précises si nécessaire."},
    {"fr", "q10", "Le LLM a ignoré mes instructions et a continué à générer des informations fausses."},
};

Outcome localization() {
  Tally t;
  const auto& scale = testing::scale();
  testing::TempDir dir;
  testing::LiveServer server(scale, service::ServiceOptions{dir / "store.ndjson", std::nullopt});
  auto client = server.client();
  std::map<std::string, Json> served;
  std::map<std::string, std::string> printed;
  for (const auto& lang : scale.languages()) {
    auto res = client.Get("/questionnaire?lang=" + lang);
    if (res && res->status == 200) served[lang] = Json::parse(res->body);
    printed[lang] = testing::run_cli("questionnaire --lang " + lang).out;
  }
  std::size_t pairs = 0;
  for (const auto& e : kItemTexts) {
    ++pairs;
    const std::string where = std::string(e.lang) + "/" + e.id;
    const auto index = scale.item_index(e.id);
    if (!index) {
      t.check(false, "unknown item " + where);
      continue;
    }
    t.check(scale.items()[*index].text.at(e.lang) == e.text, "bundle " + where);
    t.check(served.count(e.lang) && served[e.lang].at("items")[*index].at("text") == e.text, "GET /questionnaire " + where);
    const std::string line = std::to_string(*index + 1) + ". " + e.text + "\n";
    t.check(printed[e.lang].find(line) != std::string::npos, "cli questionnaire " + where);
  }
  t.check(pairs == 30, "expected 30 item/language pairs");
  return t.outcome(std::to_string(pairs) + " item texts byte-equal in bundle, GET /questionnaire and shs questionnaire");
}

const std::vector<std::pair<std::string, std::function<Outcome()>>> kCriteria{
    {"reference_example", reference_example},
    {"exhaustive_sweep", exhaustive_sweep},
    {"feldt_ci", feldt_ci},
    {"statistics_oracles", statistics_oracles},
    {"shapiro_wilk", shapiro_wilk},
    {"simulator_roundtrip", simulator_roundtrip},
    {"pipeline_equivalence", pipeline_equivalence},
    {"durability", durability},
    {"localization", localization},
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> wanted(argv + 1, argv + argc);
  int failures = 0;
  for (const auto& [name, run] : kCriteria) {
    if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), name) == wanted.end()) continue;
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s %s: %s\n", o.passed ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    if (!o.passed) ++failures;
  }
  for (const auto& w : wanted) {
    const bool known = std::any_of(kCriteria.begin(), kCriteria.end(), [&](const auto& c) { return c.first == w; });
    if (!known) {
      std::printf("FAIL %s: unknown criterion\n", w.c_str());
      ++failures;
    }
  }
  return failures == 0 ? 0 : 1;
}
