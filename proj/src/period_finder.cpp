#include "periodkit/period_finder.hpp"

#include <algorithm>
#include <cmath>

#include "periodkit/data_matrix.hpp"
#include "periodkit/errors.hpp"

namespace periodkit {

const char* method_name(Method m) {
  switch (m) {
    case Method::MVPF: return "MVPF";
    case Method::MonteCarlo: return "MonteCarlo";
    case Method::SVD: return "SVD";
  }
  return "?";
}

VarianceProfile variance_profile(std::span<const double> signal) {
  std::size_t n = signal.size();
  if (n < 4) throw Error(Errc::TooShort, "variance profile needs N >= 4");
  std::size_t p_max = n / 2;
  VarianceProfile vp;
  vp.signal_length = n;
  vp.values.resize(p_max - 1);
  std::vector<double> sum(p_max), sumsq(p_max);
  for (std::size_t p = 2; p <= p_max; ++p) {
    std::size_t m = n / p;
    vp.values[p - 2] = mean_column_popvar(signal.data(), m, p, sum.data(), sumsq.data());
  }
  return vp;
}

namespace detail {

std::vector<DipRecord> detect_dips_in(std::span<const double> values,
                                      std::size_t first_period) {
  std::vector<DipRecord> dips;
  if (values.size() < 3) return dips;
  double max_var = *std::max_element(values.begin(), values.end());
  for (std::size_t i = 1; i + 1 < values.size(); ++i) {
    if (values[i] < values[i - 1] && values[i] < values[i + 1]) {
      DipRecord d;
      d.period = first_period + i;
      d.measure1 = max_var - values[i];
      d.measure2 = max_var + values[i - 1] + values[i + 1] - 3.0 * values[i];
      double s2 = d.measure2 * d.measure2;
      d.score = s2 * s2;
      dips.push_back(d);
    }
  }
  return dips;
}

std::vector<std::size_t> sample_distinct(Rng& rng, std::size_t n, std::size_t k) {
  std::vector<std::size_t> out;
  if (k >= n) {
    out.resize(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = i;
    return out;
  }
  out.reserve(k);
  while (out.size() < k) {
    std::size_t v = static_cast<std::size_t>(rng.below(n));
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

std::vector<DipRecord> detect_dips(const VarianceProfile& profile) {
  return detail::detect_dips_in(profile.values, profile.min_period());
}

namespace {

// argmax by score; strict '>' walking periods in ascending order implements
// the smallest-period tie-break.
const DipRecord* best_dip(std::span<const DipRecord> dips) {
  const DipRecord* best = nullptr;
  for (const DipRecord& d : dips) {
    if (best == nullptr || d.score > best->score) best = &d;
  }
  return best;
}

}  // namespace

PeriodEstimate estimate_period_mvpf(std::span<const double> signal) {
  VarianceProfile vp = variance_profile(signal);
  std::vector<DipRecord> dips = detect_dips(vp);
  const DipRecord* best = best_dip(dips);
  if (best == nullptr)
    throw Error(Errc::NoDipsFound, "variance profile has no interior local minimum");
  PeriodEstimate est;
  est.period = best->period;
  est.score = best->score;
  est.method = Method::MVPF;
  est.dips = std::move(dips);
  return est;
}

namespace {

void validate_mc(const MonteCarloParams& p) {
  if (p.resends < 1) throw Error(Errc::BadParams, "resends must be >= 1");
  if (p.columns_per_period < 1) throw Error(Errc::BadParams, "columns_per_period must be >= 1");
  if (p.rows_per_column < 2) throw Error(Errc::BadParams, "rows_per_column must be >= 2");
}

double popvar_gathered(const double* x, std::size_t period,
                       std::span<const std::size_t> rows, std::size_t col) {
  const double ref = x[rows[0] * period + col];
  double s = 0.0, ss = 0.0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    double d = x[rows[i] * period + col] - ref;
    s += d;
    ss += d * d;
  }
  double L = static_cast<double>(rows.size());
  double t = ss - s * s / L;
  return t > 0.0 ? t / L : 0.0;
}

}  // namespace

double subsampled_variance(std::span<const double> signal, std::size_t period,
                           const MonteCarloParams& params, std::uint64_t run_index) {
  validate_mc(params);
  std::size_t n = signal.size();
  if (period < 2 || period > n / 2)
    throw Error(Errc::BadPeriod, "assumed period must lie in [2, N/2]");
  std::size_t m = n / period;
  std::size_t want_rows = std::min(params.rows_per_column, m);
  std::size_t want_cols = std::min(params.columns_per_period, period);

  Rng rng(derive_seed(params.seed, run_index, period));
  std::vector<std::size_t> cols = detail::sample_distinct(rng, period, want_cols);
  std::vector<std::size_t> all_rows;
  double acc = 0.0;
  for (std::size_t col : cols) {
    if (want_rows >= m) {
      if (all_rows.empty()) all_rows = detail::sample_distinct(rng, m, m);
      acc += popvar_gathered(signal.data(), period, all_rows, col);
    } else {
      std::vector<std::size_t> rows = detail::sample_distinct(rng, m, want_rows);
      acc += popvar_gathered(signal.data(), period, rows, col);
    }
  }
  return acc / static_cast<double>(cols.size());
}

PeriodEstimate estimate_period_montecarlo(std::span<const Signal> records,
                                          const MonteCarloParams& params) {
  validate_mc(params);
  std::size_t k = params.resends;
  if (records.empty()) throw Error(Errc::BadConfig, "no records");
  if (records.size() != 1 && records.size() != k)
    throw Error(Errc::BadConfig, "need one record or exactly `resends` records");
  std::size_t n = records[0].size();
  for (const Signal& r : records)
    if (r.size() != n) throw Error(Errc::LengthMismatch, "records differ in length");
  if (n < 4) throw Error(Errc::TooShort, "records too short");

  std::size_t p_max = n / 2;
  std::vector<double> profile(p_max - 1);
  // per-period tallies across runs
  std::vector<std::uint32_t> seen(p_max + 1, 0);
  std::vector<double> sum_m1(p_max + 1, 0.0), sum_m2(p_max + 1, 0.0), sum_score(p_max + 1, 0.0);

  for (std::size_t run = 0; run < k; ++run) {
    const Signal& x = records[records.size() == 1 ? 0 : run];
    for (std::size_t p = 2; p <= p_max; ++p)
      profile[p - 2] = subsampled_variance(x, p, params, run);
    for (const DipRecord& d : detail::detect_dips_in(profile, 2)) {
      seen[d.period] += 1;
      sum_m1[d.period] += d.measure1;
      sum_m2[d.period] += d.measure2;
      sum_score[d.period] += d.score;
    }
  }

  // only periods that dip in every run are candidates
  std::vector<DipRecord> consistent;
  for (std::size_t p = 2; p <= p_max; ++p) {
    if (seen[p] == k) {
      double inv_k = 1.0 / static_cast<double>(k);
      consistent.push_back(DipRecord{p, sum_m1[p] * inv_k, sum_m2[p] * inv_k,
                                     sum_score[p] * inv_k});
    }
  }
  const DipRecord* best = best_dip(consistent);
  if (best == nullptr)
    throw Error(Errc::NoConsistentDips, "no dip location survived all runs");

  PeriodEstimate est;
  est.period = best->period;
  est.score = best->score;
  est.method = Method::MonteCarlo;
  est.runs_consistent = consistent.size();
  est.dips = std::move(consistent);
  return est;
}

}  // namespace periodkit
