#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "periodkit/rng.hpp"
#include "periodkit/signal.hpp"

namespace periodkit {

// Mean column variance per assumed period P in [2, floor(N/2)].
struct VarianceProfile {
  std::size_t signal_length = 0;
  std::vector<double> values;  // values[i] belongs to P = i + 2

  std::size_t min_period() const { return 2; }
  std::size_t max_period() const { return signal_length / 2; }
  double at(std::size_t period) const { return values[period - 2]; }
};

// A strict interior local minimum of a variance profile.
//   measure1 = max(var) - var[P]
//   measure2 = max(var) + var[P-1] + var[P+1] - 3*var[P]
//   score    = measure2^4
struct DipRecord {
  std::size_t period = 0;
  double measure1 = 0.0;
  double measure2 = 0.0;
  double score = 0.0;
};

enum class Method { MVPF, MonteCarlo, SVD };
const char* method_name(Method m);

struct PeriodEstimate {
  std::size_t period = 0;
  double score = 0.0;
  Method method = Method::MVPF;
  std::vector<DipRecord> dips;                  // evidence behind the pick
  std::optional<std::size_t> runs_consistent;   // Monte Carlo only
};

struct MonteCarloParams {
  std::size_t resends = 5;             // k
  std::size_t columns_per_period = 16; // c
  std::size_t rows_per_column = 16;    // L
  std::uint64_t seed = kDefaultSeed;
};

VarianceProfile variance_profile(std::span<const double> signal);

std::vector<DipRecord> detect_dips(const VarianceProfile& profile);

// Exhaustive minimum-variance estimator: full profile, dips scored by
// measure2^4, argmax; score ties break to the smallest period.
PeriodEstimate estimate_period_mvpf(std::span<const double> signal);

// Mean population variance over `columns_per_period` sampled columns, each
// restricted to `rows_per_column` sampled rows (both clamped to what the
// data matrix actually has). The sampling stream is a pure function of
// (params.seed, run_index, period).
double subsampled_variance(std::span<const double> signal, std::size_t period,
                           const MonteCarloParams& params, std::uint64_t run_index);

// Randomized estimator: one subsampled profile per resend, dips detected per
// run, and only periods that dip in every run stay in play; among those the
// highest mean score wins (ties to the smallest period). `records` holds
// either k independent observations, or a single record reused with k
// distinct subsample streams.
PeriodEstimate estimate_period_montecarlo(std::span<const Signal> records,
                                          const MonteCarloParams& params);

namespace detail {
// k distinct values from [0, n), ascending; all of [0, n) when k >= n.
std::vector<std::size_t> sample_distinct(Rng& rng, std::size_t n, std::size_t k);
std::vector<DipRecord> detect_dips_in(std::span<const double> values,
                                      std::size_t first_period);
}  // namespace detail

}  // namespace periodkit
