#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <thread>
#include <vector>

#include "oracles.hpp"
#include "periodkit/data_matrix.hpp"
#include "periodkit/errors.hpp"
#include "periodkit/period_finder.hpp"
#include "periodkit/rng.hpp"
#include "periodkit/signal.hpp"

using namespace periodkit;

namespace {

Signal reference_composite(std::size_t n = 4119) {
  return compose(std::vector<Signal>{gen_triangular(8, 1.0, n), gen_cosine(11, 1.0, n),
                                     gen_triangular(16, 1.0, n)});
}

VarianceProfile profile_from(std::vector<double> values, std::size_t n) {
  VarianceProfile vp;
  vp.signal_length = n;
  vp.values = std::move(values);
  return vp;
}

}  // namespace

TEST_CASE("build_data_matrix chops row-wise and drops the remainder") {
  Signal x{1, 2, 3, 1, 2, 3, 1, 2};
  DataMatrix d = build_data_matrix(x, 3);
  REQUIRE(d.rows == 2);
  REQUIRE(d.period == 3);
  CHECK(d.values == std::vector<double>{1, 2, 3, 1, 2, 3});

  DataMatrix full = build_data_matrix(x, 4);
  CHECK(full.rows == 2);
  CHECK(full.values == std::vector<double>(x.begin(), x.end()));

  Signal x10{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  DataMatrix dropped = build_data_matrix(x10, 4);
  CHECK(dropped.rows == 2);
  CHECK(dropped.values == std::vector<double>{0, 1, 2, 3, 4, 5, 6, 7});

  CHECK_THROWS_AS(build_data_matrix(x, 1), Error);
  CHECK_THROWS_AS(build_data_matrix(x, 5), Error);  // floor(8/5) = 1 row
}

TEST_CASE("column_variance_mean on hand-checked matrices") {
  Signal ex{1, 2, 3, 1, 2, 3, 1, 2};
  CHECK(column_variance_mean(build_data_matrix(ex, 3)) == 0.0);

  Signal alt{1, 2, 1, 2, 1, 2};
  CHECK(column_variance_mean(build_data_matrix(alt, 2)) == 0.0);
  // columns [1,2], [2,1], [1,2], each population variance 1/4
  CHECK(column_variance_mean(build_data_matrix(alt, 3)) == 0.25);

  Rng rng(5);
  Signal noise(97);
  for (double& v : noise) v = rng.gaussian();
  for (std::size_t p : {2, 5, 7, 31, 48}) {
    CHECK(column_variance_mean(build_data_matrix(noise, p)) ==
          doctest::Approx(oracles::naive_column_variance_mean(
                              std::span<const double>(noise).first((noise.size() / p) * p), p))
              .epsilon(1e-12));
  }
}

TEST_CASE("variance_profile equals the data-matrix route at every period") {
  Rng rng(17);
  Signal x(301);
  for (double& v : x) v = rng.uniform();
  VarianceProfile vp = variance_profile(x);
  REQUIRE(vp.values.size() == 301 / 2 - 1);
  for (std::size_t p = 2; p <= vp.max_period(); ++p)
    CHECK(vp.at(p) == column_variance_mean(build_data_matrix(x, p)));
}

TEST_CASE("variance_profile basics") {
  Signal constant(64, 3.25);
  VarianceProfile vp = variance_profile(constant);
  for (double v : vp.values) CHECK(v == 0.0);

  CHECK_THROWS_AS(variance_profile(Signal{1, 2, 3}), Error);

  // shortest usable signals: N = 4 yields the single point P = 2
  VarianceProfile tiny = variance_profile(Signal{1, 2, 3, 4});
  CHECK(tiny.values.size() == 1);
  CHECK(tiny.max_period() == 2);
  CHECK_THROWS_AS(estimate_period_mvpf(Signal{1, 2, 3, 4}), Error);  // no interior point
}

TEST_CASE("variance vanishes exactly at period multiples and only there") {
  Rng seeds(123);
  for (int trial = 0; trial < 10; ++trial) {
    std::size_t period = 2 + static_cast<std::size_t>(seeds.below(39));
    std::size_t n = 8 * period + 1 + static_cast<std::size_t>(seeds.below(period));
    Signal x = gen_random_pattern(period, 1.0, n, seeds.next_u64());
    double power = power_of(x);
    VarianceProfile vp = variance_profile(x);
    for (std::size_t p = 2; p <= vp.max_period(); ++p) {
      if (p % period == 0) {
        CHECK(vp.at(p) <= 1e-12 * power);
      } else {
        CHECK(vp.at(p) > 1e-12 * power);
      }
    }
  }
}

TEST_CASE("at multiples of a hidden period only the other components contribute") {
  Signal x8 = gen_triangular(8, 1.0, 4119);
  Signal rest = compose(std::vector<Signal>{gen_cosine(11, 1.0, 4119),
                                            gen_triangular(16, 1.0, 4119)});
  Signal full = compose(std::vector<Signal>{x8, rest});
  double power = power_of(full);
  VarianceProfile vp_full = variance_profile(full);
  VarianceProfile vp_rest = variance_profile(rest);
  for (std::size_t m = 1; m <= 10; ++m)
    CHECK(std::abs(vp_full.at(8 * m) - vp_rest.at(8 * m)) <= 1e-9 * power);
}

TEST_CASE("shift invariance is exact on exactly-representable inputs") {
  Rng rng(31);
  Signal x(200);
  for (double& v : x) v = static_cast<double>(rng.below(17)) - 8.0;  // small integers
  Signal shifted(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) shifted[i] = x[i] + 64.0;
  VarianceProfile a = variance_profile(x);
  VarianceProfile b = variance_profile(shifted);
  CHECK(a.values == b.values);

  // float-valued signals still agree to rounding
  Signal y = gen_random_pattern(9, 1.0, 200, 4);
  Signal y_shift(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) y_shift[i] = y[i] + 0.7331;
  VarianceProfile c = variance_profile(y);
  VarianceProfile d = variance_profile(y_shift);
  for (std::size_t i = 0; i < c.values.size(); ++i)
    CHECK(d.values[i] == doctest::Approx(c.values[i]).epsilon(1e-9));
}

TEST_CASE("scale equivariance: s^2 scaling exactly for s = 2, argmax for s = 3") {
  Signal x = compose(std::vector<Signal>{gen_triangular(7, 1.0, 400),
                                         gen_triangular(13, 1.0, 400)});
  Signal x2(x.size()), x3(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    x2[i] = 2.0 * x[i];
    x3[i] = 3.0 * x[i];
  }
  VarianceProfile a = variance_profile(x);
  VarianceProfile b = variance_profile(x2);
  for (std::size_t i = 0; i < a.values.size(); ++i) CHECK(b.values[i] == 4.0 * a.values[i]);
  CHECK(estimate_period_mvpf(x3).period == estimate_period_mvpf(x).period);
}

TEST_CASE("detect_dips on the worked five-point profile") {
  VarianceProfile vp = profile_from({5, 3, 5, 1, 5}, 13);  // periods 2..6
  std::vector<DipRecord> dips = detect_dips(vp);
  REQUIRE(dips.size() == 2);
  CHECK(dips[0].period == 3);
  CHECK(dips[0].measure1 == 2.0);
  CHECK(dips[0].measure2 == 6.0);
  CHECK(dips[0].score == 1296.0);
  CHECK(dips[1].period == 5);
  CHECK(dips[1].measure1 == 4.0);
  CHECK(dips[1].measure2 == 12.0);
  CHECK(dips[1].score == 20736.0);

  CHECK(detect_dips(profile_from({1, 2, 3, 4, 5}, 13)).empty());
  CHECK(detect_dips(profile_from({2, 1}, 9)).empty());
}

TEST_CASE("dips appear at hidden-period multiples on the {7,13} composite") {
  Signal x = compose(std::vector<Signal>{gen_triangular(7, 1.0, 400),
                                         gen_triangular(13, 1.0, 400)});
  VarianceProfile vp = variance_profile(x);
  std::vector<bool> is_dip(vp.max_period() + 1, false);
  for (const DipRecord& d : detect_dips(vp)) is_dip[d.period] = true;

  auto hidden_multiple = [](std::size_t p) { return p % 7 == 0 || p % 13 == 0; };
  for (std::size_t p = 3; p < vp.max_period(); ++p) {
    // composite-period multiples always dip
    if (p % 91 == 0) CHECK(is_dip[p]);
    // hidden-period multiples dip too, unless a neighbour is itself a
    // deeper hidden multiple or the matrix is too short to average (m < 4)
    if (hidden_multiple(p) && !hidden_multiple(p - 1) && !hidden_multiple(p + 1) &&
        400 / p >= 4) {
      CHECK(is_dip[p]);
    }
  }
}

TEST_CASE("dip measures satisfy measure2 >= measure1 >= 0 on noisy profiles") {
  Rng rng(77);
  for (int t = 0; t < 20; ++t) {
    std::vector<double> values(50);
    for (double& v : values) v = rng.uniform();
    for (const DipRecord& d : detail::detect_dips_in(values, 2)) {
      CHECK(d.measure1 >= 0.0);
      CHECK(d.measure2 >= d.measure1);
      CHECK(d.score == doctest::Approx(std::pow(d.measure2, 4.0)));
    }
  }
}

TEST_CASE("MVPF recovers composite periods and rejects flat signals") {
  Signal x79 = compose(std::vector<Signal>{gen_triangular(7, 1.0, 400),
                                           gen_triangular(13, 1.0, 400)});
  PeriodEstimate est = estimate_period_mvpf(x79);
  CHECK(est.period == 91);
  CHECK(est.method == Method::MVPF);
  CHECK(!est.dips.empty());

  CHECK(estimate_period_mvpf(reference_composite()).period == 176);

  CHECK_THROWS_AS(estimate_period_mvpf(Signal(64, 1.0)), Error);
}

TEST_CASE("sample_distinct yields sorted distinct draws in range") {
  Rng rng(3);
  for (auto [n, k] : {std::pair<std::size_t, std::size_t>{100, 16}, {17, 16}, {16, 16}, {5, 9}}) {
    std::vector<std::size_t> s = detail::sample_distinct(rng, n, k);
    CHECK(s.size() == std::min(n, k));
    CHECK(std::is_sorted(s.begin(), s.end()));
    CHECK(std::adjacent_find(s.begin(), s.end()) == s.end());
    for (std::size_t v : s) CHECK(v < n);
  }
}

TEST_CASE("subsampled_variance: degenerate subsample equals the full computation") {
  Signal x = add_noise_snr(reference_composite(512), 20.0, 21);
  MonteCarloParams full;
  full.columns_per_period = 100000;
  full.rows_per_column = 100000;
  full.seed = 5;
  for (std::size_t p : {2, 3, 16, 100, 256}) {
    CHECK(subsampled_variance(x, p, full, 0) ==
          column_variance_mean(build_data_matrix(x, p)));
  }
}

TEST_CASE("subsampled_variance: zero at matched periods, deterministic streams") {
  Signal x = gen_random_pattern(12, 1.0, 600, 8);
  MonteCarloParams mc;  // defaults: 16 columns x 16 rows
  mc.seed = 99;
  for (std::size_t p : {12, 24, 48}) CHECK(subsampled_variance(x, p, mc, 0) == 0.0);
  CHECK(subsampled_variance(x, 17, mc, 3) == subsampled_variance(x, 17, mc, 3));
  CHECK(subsampled_variance(x, 17, mc, 3) != subsampled_variance(x, 17, mc, 4));
  CHECK_THROWS_AS(subsampled_variance(x, 1, mc, 0), Error);
  CHECK_THROWS_AS(subsampled_variance(x, 301, mc, 0), Error);

  MonteCarloParams bad = mc;
  bad.rows_per_column = 1;
  CHECK_THROWS_AS(subsampled_variance(x, 7, bad, 0), Error);
}

TEST_CASE("Monte Carlo with one full-subsampling run reduces to MVPF") {
  Signal x = add_noise_snr(compose(std::vector<Signal>{gen_triangular(7, 1.0, 420),
                                                       gen_triangular(13, 1.0, 420)}),
                           25.0, 13);
  MonteCarloParams mc;
  mc.resends = 1;
  mc.columns_per_period = 1 << 20;
  mc.rows_per_column = 1 << 20;
  PeriodEstimate mvpf = estimate_period_mvpf(x);
  PeriodEstimate mcarlo = estimate_period_montecarlo(std::vector<Signal>{x}, mc);
  CHECK(mcarlo.period == mvpf.period);
  CHECK(mcarlo.score == mvpf.score);
  CHECK(mcarlo.method == Method::MonteCarlo);
  CHECK(mcarlo.runs_consistent.has_value());
}

TEST_CASE("Monte Carlo consistency vote on the reference composite") {
  Signal clean = reference_composite();
  MonteCarloParams mc;
  mc.resends = 5;
  for (std::uint64_t trial = 0; trial < 3; ++trial) {
    std::vector<Signal> records;
    for (std::size_t r = 0; r < mc.resends; ++r)
      records.push_back(add_noise_snr(clean, 32.0, derive_seed(1000, trial, r)));
    mc.seed = derive_seed(2000, trial, 0);
    PeriodEstimate est = estimate_period_montecarlo(records, mc);
    CHECK(est.period % 176 == 0);
    CHECK(*est.runs_consistent >= 1);
    // replay is identical
    PeriodEstimate again = estimate_period_montecarlo(records, mc);
    CHECK(again.period == est.period);
    CHECK(again.score == est.score);
  }
}

TEST_CASE("estimators are pure: concurrent calls agree with the serial result") {
  Signal x = add_noise_snr(reference_composite(2048), 20.0, 31);
  PeriodEstimate serial = estimate_period_mvpf(x);
  std::vector<std::thread> workers;
  std::vector<std::size_t> results(4, 0);
  for (std::size_t i = 0; i < results.size(); ++i)
    workers.emplace_back([&, i] { results[i] = estimate_period_mvpf(x).period; });
  for (std::thread& w : workers) w.join();
  for (std::size_t r : results) CHECK(r == serial.period);
}

TEST_CASE("Monte Carlo input validation") {
  Signal x = gen_random_pattern(5, 1.0, 100, 1);
  MonteCarloParams mc;
  mc.resends = 3;
  CHECK_THROWS_AS(estimate_period_montecarlo(std::vector<Signal>{},  mc), Error);
  CHECK_THROWS_AS(estimate_period_montecarlo(std::vector<Signal>{x, x}, mc), Error);
  Signal shorter(x.begin(), x.end() - 1);
  CHECK_THROWS_AS(estimate_period_montecarlo(std::vector<Signal>{x, shorter, x}, mc), Error);

  // constant records have no dips anywhere, so no location can be consistent
  std::vector<Signal> flat(3, Signal(80, 2.0));
  CHECK_THROWS_AS(estimate_period_montecarlo(flat, mc), Error);
}
