#pragma once

// Synthetic rater cohorts with a planted latent structure.
//
// Per participant, in this draw order:
//   1. careless draw c ~ U[0,1); the participant is careless when c < careless_rate
//   2. shared factor z ~ N(0,1)
//   3. per dimension i: e_i ~ N(0,1), eps_pos ~ N(0,sigma), eps_neg ~ N(0,sigma)
//   4. careless participants only: ten draws floor(5u) - 2, in item order
// The latent for dimension i is a truncated normal N(mu_i, tau) on [-1,1],
// obtained by inverse-CDF from u_i = sqrt(rho) z + sqrt(1-rho) e_i, so every
// marginal is exactly the truncated normal and rho sets the correlation
// between dimensions (rho = 0 gives independent dimensions).
// Raw answers are 2 theta + eps_pos and -2 theta + eps_neg, rounded half away
// from zero and clamped to [-2,2].

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "shs/error.hpp"
#include "shs/psychometrics.hpp"
#include "shs/scale.hpp"
#include "shs/scoring.hpp"
#include "shs/stats/special_functions.hpp"

namespace shs::sim {

/// mt19937_64 with fixed conversions, so streams only depend on the seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0,1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Box-Muller, one variate per call (the sine branch is discarded).
  double normal() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  int uniform_int(int lo, int hi) {
    const auto span = static_cast<double>(hi - lo + 1);
    return lo + static_cast<int>(std::floor(uniform() * span));
  }

 private:
  std::mt19937_64 engine_;
};

struct SimConfig {
  std::size_t n_participants = 210;
  std::uint64_t seed = 1;
  std::array<double, kDimensionCount> latent_mean{};  // mu_i in [-1,1]
  double latent_spread = 0.4;                        // tau >= 0
  double noise = 0.2;                                // sigma >= 0
  double careless_rate = 0.0;
  double coupling = 0.6;  // rho in [0,1]

  void validate() const {
    std::vector<std::string> problems;
    if (n_participants == 0) problems.push_back("n_participants must be at least 1");
    for (double mu : latent_mean) {
      if (!(mu >= -1.0 && mu <= 1.0)) {
        problems.push_back("latent means must lie in [-1, 1]");
        break;
      }
    }
    if (!(latent_spread >= 0.0) || !std::isfinite(latent_spread)) problems.push_back("spread must be >= 0");
    if (!(noise >= 0.0) || !std::isfinite(noise)) problems.push_back("noise must be >= 0");
    if (!(careless_rate >= 0.0 && careless_rate <= 1.0)) problems.push_back("careless rate must lie in [0, 1]");
    if (!(coupling >= 0.0 && coupling <= 1.0)) problems.push_back("coupling must lie in [0, 1]");
    if (problems.empty()) return;
    std::string msg = "invalid simulator config: ";
    for (std::size_t i = 0; i < problems.size(); ++i) msg += (i ? "; " : "") + problems[i];
    throw ConfigError(msg);
  }
};

struct Cohort {
  ItemMatrix matrix;
  std::vector<std::array<double, kDimensionCount>> latent;
  std::vector<bool> careless;

  std::vector<ResponseSheet> sheets() const {
    std::vector<ResponseSheet> out;
    out.reserve(matrix.size());
    for (std::size_t r = 0; r < matrix.size(); ++r) {
      ResponseSheet s;
      for (std::size_t i = 0; i < kItemCount; ++i) s.answers[matrix.item_ids[i]] = matrix.rows[r][i];
      s.participant_id = matrix.participant_ids[r];
      out.push_back(std::move(s));
    }
    return out;
  }
};

inline std::string participant_label(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "p%04zu", index + 1);
  return buf;
}

inline int quantize(double raw) {
  return static_cast<int>(std::clamp(std::round(raw), double(kLikertMin), double(kLikertMax)));
}

inline double truncated_latent(double mu, double tau, double u) {
  if (tau == 0.0) return mu;
  const double lo = stats::normal_cdf((-1.0 - mu) / tau);
  const double hi = stats::normal_cdf((1.0 - mu) / tau);
  const double p = lo + stats::normal_cdf(u) * (hi - lo);
  if (p <= 0.0) return -1.0;
  if (p >= 1.0) return 1.0;
  return std::clamp(mu + tau * stats::normal_quantile(p), -1.0, 1.0);
}

inline Cohort simulate(const SimConfig& config, const ScaleDefinition& scale) {
  config.validate();
  Rng rng(config.seed);
  const double shared_w = std::sqrt(config.coupling);
  const double own_w = std::sqrt(1.0 - config.coupling);

  Cohort cohort;
  cohort.matrix.item_ids = item_ids(scale);
  cohort.matrix.rows.reserve(config.n_participants);
  for (std::size_t j = 0; j < config.n_participants; ++j) {
    const bool careless = rng.uniform() < config.careless_rate;
    const double z = rng.normal();
    std::array<double, kDimensionCount> theta{};
    ItemRow row{};
    for (std::size_t d = 0; d < kDimensionCount; ++d) {
      const double u = shared_w * z + own_w * rng.normal();
      const double eps_pos = config.noise * rng.normal();
      const double eps_neg = config.noise * rng.normal();
      theta[d] = truncated_latent(config.latent_mean[d], config.latent_spread, u);
      row[2 * d] = quantize(2.0 * theta[d] + eps_pos);
      row[2 * d + 1] = quantize(-2.0 * theta[d] + eps_neg);
    }
    if (careless) {
      for (auto& cell : row) cell = rng.uniform_int(kLikertMin, kLikertMax);
    }
    cohort.matrix.rows.push_back(row);
    cohort.matrix.participant_ids.push_back(participant_label(j));
    cohort.latent.push_back(theta);
    cohort.careless.push_back(careless);
  }
  return cohort;
}

struct RoundtripTolerances {
  double min_alpha = 0.9;
  double min_paired_r = 0.9;
  std::size_t careless_n = 1000;
  double max_careless_alpha = 0.15;
  double max_careless_mean_abs_r = 0.1;
  std::vector<double> sigma_sweep{0.1, 0.5, 1.5};
  std::size_t sweep_seeds = 20;
};

struct RoundtripCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct RoundtripSummary {
  std::vector<RoundtripCheck> checks;

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
  }
};

namespace detail {

inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

inline std::vector<ShsResult> score_rows(const ItemMatrix& m, const ScaleDefinition& scale) {
  std::vector<ShsResult> out;
  out.reserve(m.size());
  for (const auto& row : m.rows) {
    AnswerVector a{};
    for (std::size_t i = 0; i < kItemCount; ++i) a[i] = LikertValue(row[i]);
    out.push_back(score_answers(a, scale));
  }
  return out;
}

inline double mean_paired_r(const ItemMatrix& m, const ScaleDefinition& scale, bool absolute) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& p : paired_item_correlations(m, scale)) {
    if (!p.correlation) continue;
    sum += absolute ? std::abs(p.correlation->r) : p.correlation->r;
    ++n;
  }
  return n ? sum / static_cast<double>(n) : 0.0;
}

}  // namespace detail

/// Simulates cohorts from `config` and checks that the analysis recovers the
/// planted structure. The base config drives the low-noise check; the careless
/// and sigma-sweep checks reuse its latent settings.
inline RoundtripSummary roundtrip_check(const SimConfig& config, const ScaleDefinition& scale,
                                        const RoundtripTolerances& tol = {}) {
  config.validate();
  RoundtripSummary summary;

  const Cohort base = simulate(config, scale);
  try {
    const double a = cronbach_alpha(base.matrix, scale);
    summary.checks.push_back({"alpha", a > tol.min_alpha, "alpha = " + detail::fmt(a)});
  } catch (const StatisticError& e) {
    summary.checks.push_back({"alpha", false, e.what()});
  }
  {
    bool ok = true;
    std::string detail_text;
    for (const auto& p : paired_item_correlations(base.matrix, scale)) {
      const bool good = p.correlation && p.correlation->r > tol.min_paired_r;
      ok = ok && good;
      detail_text += p.dimension + "=" + (p.correlation ? detail::fmt(p.correlation->r) : "n/a") + " ";
    }
    if (!detail_text.empty()) detail_text.pop_back();
    summary.checks.push_back({"paired_items", ok, detail_text});
  }

  SimConfig careless = config;
  careless.n_participants = tol.careless_n;
  careless.careless_rate = 1.0;
  const Cohort noise_only = simulate(careless, scale);
  try {
    const double a = cronbach_alpha(noise_only.matrix, scale);
    summary.checks.push_back({"careless_alpha", std::abs(a) < tol.max_careless_alpha, "alpha = " + detail::fmt(a)});
  } catch (const StatisticError& e) {
    summary.checks.push_back({"careless_alpha", false, e.what()});
  }
  const double mean_abs = detail::mean_paired_r(noise_only.matrix, scale, true);
  summary.checks.push_back(
      {"careless_paired_items", mean_abs < tol.max_careless_mean_abs_r, "mean |r| = " + detail::fmt(mean_abs)});

  std::vector<double> flag_rates;
  std::vector<double> paired_means;
  for (double sigma : tol.sigma_sweep) {
    double rate = 0.0;
    double paired = 0.0;
    for (std::size_t s = 0; s < tol.sweep_seeds; ++s) {
      SimConfig c = config;
      c.noise = sigma;
      c.careless_rate = 0.0;
      c.seed = config.seed + s;
      const Cohort cohort = simulate(c, scale);
      rate += inconsistent_rate(detail::score_rows(cohort.matrix, scale));
      paired += detail::mean_paired_r(cohort.matrix, scale, false);
    }
    flag_rates.push_back(rate / static_cast<double>(tol.sweep_seeds));
    paired_means.push_back(paired / static_cast<double>(tol.sweep_seeds));
  }
  std::string rates_text;
  std::string paired_text;
  for (std::size_t i = 0; i < flag_rates.size(); ++i) {
    rates_text += (i ? " " : "") + detail::fmt(flag_rates[i]);
    paired_text += (i ? " " : "") + detail::fmt(paired_means[i]);
  }
  summary.checks.push_back(
      {"flag_rate_monotone", std::is_sorted(flag_rates.begin(), flag_rates.end()), "rates " + rates_text});
  summary.checks.push_back({"paired_r_monotone", std::is_sorted(paired_means.rbegin(), paired_means.rend()),
                            "mean r " + paired_text});
  return summary;
}

}  // namespace shs::sim
