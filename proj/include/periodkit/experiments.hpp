#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "periodkit/csv.hpp"
#include "periodkit/period_finder.hpp"
#include "periodkit/signal.hpp"
#include "periodkit/svd_baseline.hpp"

namespace periodkit {

inline constexpr int kReportSchemaVersion = 1;

struct ExperimentConfig {
  // Defaults reproduce the reference composite: hidden periods {8, 11, 16}
  // (lcm 176) over 4119 samples.
  std::vector<ComponentSpec> components = {
      {8, Waveform::Triangular, 1.0},
      {11, Waveform::Cosine, 1.0},
      {16, Waveform::Triangular, 1.0},
  };
  std::size_t n = 4119;
  std::vector<double> snr_db;             // empty means noiseless; +inf allowed
  std::size_t trials = 20;
  MonteCarloParams montecarlo;
  SvdParams svd;
  std::uint64_t master_seed = kDefaultSeed;

  // runtime comparison
  std::vector<std::size_t> n_sweep = {4096, 8192, 16384, 32768};
  std::size_t timing_repeats = 3;
  std::vector<std::string> methods = {"montecarlo", "svd"};

  // reconstruction eval
  std::size_t seeds_per_snr = 1;

  std::vector<std::size_t> hidden_periods() const;
  std::uint64_t composite_period() const;  // lcm of the hidden periods
};

ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& c);

struct TrialRecord {
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  std::size_t estimate = 0;  // 0 when the estimator reported no dips
  bool hit = false;
  double wall_ms = 0.0;
};

struct BenchRow {
  std::string method;
  std::size_t n = 0;
  std::vector<double> times_s;  // one per repeat
  double median_s = 0.0;
  std::size_t estimate = 0;
};

struct ReconRow {
  double snr_db = 0.0;
  std::uint64_t seed = 0;
  std::size_t estimate = 0;
  bool hit = false;
  std::map<std::size_t, double> correlations;  // hidden period -> corr vs truth
  double max_nondivisor_strength = 0.0;
};

struct ExperimentReport {
  std::string kind;  // "hitmiss" | "bench" | "recon"
  ExperimentConfig config;

  // hit-miss
  std::vector<TrialRecord> trials;
  std::size_t hits = 0;
  std::size_t misses = 0;
  double mean_runtime_ms = 0.0;
  double stddev_runtime_ms = 0.0;

  // bench
  std::vector<BenchRow> bench;
  std::map<std::string, double> slopes;  // method -> log-log slope

  // recon
  std::vector<ReconRow> recon;
};

// Per trial: synthesize k fresh noisy records of the configured composite,
// run the Monte Carlo estimator, count a hit when the estimate is a multiple
// of the composite period. Fully determined by master_seed.
ExperimentReport run_hit_miss(const ExperimentConfig& config);

// Wall time per method over the N sweep (median of timing_repeats serial
// runs each) plus the fitted log-log slope per method.
ExperimentReport run_runtime_comparison(const ExperimentConfig& config);

// Per (snr, seed): estimate the period, decompose, reconstruct with the
// equal DC split, and score each component against its ground truth over one
// composite period; also tracks the largest normalized strength landing in a
// subspace that divides none of the hidden periods.
ExperimentReport run_reconstruction_eval(const ExperimentConfig& config);

// include_timing=false yields the seed-determined portion only (used to
// check byte-identical reruns).
nlohmann::json report_to_json(const ExperimentReport& r, bool include_timing = true);

// Companion table: one row per trial / per (method, n) / per (snr, seed,
// component) depending on the report kind.
CsvTable report_to_csv(const ExperimentReport& r);

}  // namespace periodkit
