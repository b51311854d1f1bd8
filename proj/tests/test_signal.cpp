#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "oracles.hpp"
#include "periodkit/errors.hpp"
#include "periodkit/period_finder.hpp"
#include "periodkit/signal.hpp"

using namespace periodkit;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

void check_exact_periodicity(const Signal& x, std::size_t p) {
  for (std::size_t n = 0; n + p < x.size(); ++n) CHECK(x[n + p] == x[n]);
}
}  // namespace

TEST_CASE("triangular wave: two-point case is the +-A/2 alternation") {
  Signal x = gen_triangular(2, 1.0, 8);
  REQUIRE(x.size() == 8);
  for (std::size_t n = 0; n < 8; ++n) CHECK(x[n] == (n % 2 == 0 ? -0.5 : 0.5));
}

TEST_CASE("triangular wave: period 8 reference component") {
  Signal x = gen_triangular(8, 1.0, 4119);
  REQUIRE(x.size() == 4119);
  check_exact_periodicity(x, 8);
  // mean over whole periods
  std::size_t whole = (4119 / 8) * 8;
  CHECK(std::abs(mean_of(std::span(x).first(whole))) <= 1e-12);
  // peak sits at floor(p/2)
  CHECK(x[4] == *std::max_element(x.begin(), x.begin() + 8));

  VarianceProfile vp = variance_profile(x);
  for (std::size_t p = 2; p <= vp.max_period(); ++p) {
    if (p % 8 == 0) {
      CHECK(vp.at(p) == 0.0);
    } else {
      CHECK(vp.at(p) > 1e-12 * power_of(x));
    }
  }
}

TEST_CASE("cosine wave: template and zero mean") {
  Signal x = gen_cosine(4, 2.0, 12);
  CHECK(x[0] == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(std::abs(x[1]) <= 1e-15);
  CHECK(x[2] == doctest::Approx(-2.0).epsilon(1e-15));
  CHECK(std::abs(x[3]) <= 1e-15);
  check_exact_periodicity(x, 4);

  Signal c11 = gen_cosine(11, 1.0, 4119);
  check_exact_periodicity(c11, 11);
  double one_period = 0.0;
  for (std::size_t n = 0; n < 11; ++n) one_period += c11[n];
  CHECK(std::abs(one_period) <= 1e-12);
}

TEST_CASE("random pattern: deterministic, periodic, recoverable") {
  Signal a = gen_random_pattern(13, 1.0, 1000, 42);
  Signal b = gen_random_pattern(13, 1.0, 1000, 42);
  CHECK(a == b);
  Signal c = gen_random_pattern(13, 1.0, 1000, 43);
  CHECK(a != c);
  check_exact_periodicity(a, 13);
  std::size_t est = estimate_period_mvpf(a).period;
  CHECK(est % 13 == 0);
}

TEST_CASE("generator parameter validation") {
  CHECK_THROWS_AS(gen_triangular(1, 1.0, 10), Error);
  CHECK_THROWS_AS(gen_triangular(4, 0.0, 10), Error);
  CHECK_THROWS_AS(gen_triangular(4, 1.0, 3), Error);
  CHECK_THROWS_AS(gen_cosine(0, 1.0, 10), Error);
  CHECK_THROWS_AS(gen_random_pattern(5, -1.0, 10, 1), Error);
}

TEST_CASE("compose sums components; {7,13} gives a period-91 composite") {
  Signal t7 = gen_triangular(7, 1.0, 400);
  Signal t13 = gen_triangular(13, 1.0, 400);
  Signal both = compose(std::vector<Signal>{t7, t13});
  for (std::size_t n = 0; n < 400; ++n) CHECK(both[n] == t7[n] + t13[n]);

  VarianceProfile vp = variance_profile(both);
  CHECK(vp.at(91) == 0.0);
  CHECK(vp.at(182) == 0.0);

  Signal three = compose(std::vector<Signal>{gen_triangular(8, 1.0, 4119),
                                             gen_cosine(11, 1.0, 4119),
                                             gen_triangular(16, 1.0, 4119)});
  CHECK(variance_profile(three).at(176) == 0.0);

  Signal one = compose(std::vector<Signal>{t7});
  CHECK(one == t7);

  Signal shorter = gen_triangular(7, 1.0, 399);
  CHECK_THROWS_AS(compose(std::vector<Signal>{t7, shorter}), Error);
}

TEST_CASE("add_noise_snr calibration and determinism") {
  Signal clean = compose(std::vector<Signal>{gen_triangular(8, 1.0, 4119),
                                             gen_cosine(11, 1.0, 4119),
                                             gen_triangular(16, 1.0, 4119)});
  SUBCASE("infinite SNR is the identity") {
    CHECK(add_noise_snr(clean, kInf, 5) == clean);
  }
  SUBCASE("realized SNR lands within half a dB") {
    for (double target : {32.0, 14.56, 9.0}) {
      Signal noisy = add_noise_snr(clean, target, 7);
      CHECK(std::abs(measure_snr(clean, noisy) - target) <= 0.5);
    }
  }
  SUBCASE("same seed reproduces, fresh seed differs") {
    CHECK(add_noise_snr(clean, 20.0, 11) == add_noise_snr(clean, 20.0, 11));
    CHECK(add_noise_snr(clean, 20.0, 11) != add_noise_snr(clean, 20.0, 12));
  }
  SUBCASE("scaling by 2 scales the noisy output by exactly 2") {
    Signal doubled(clean.size());
    for (std::size_t i = 0; i < clean.size(); ++i) doubled[i] = 2.0 * clean[i];
    Signal a = add_noise_snr(clean, 18.0, 3);
    Signal b = add_noise_snr(doubled, 18.0, 3);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(b[i] == 2.0 * a[i]);
    CHECK(estimate_period_mvpf(a).period == estimate_period_mvpf(b).period);
  }
  SUBCASE("zero-power input is rejected") {
    Signal zeros(100, 0.0);
    CHECK_THROWS_AS(add_noise_snr(zeros, 10.0, 1), Error);
  }
}

TEST_CASE("measure_snr definition") {
  Signal clean = gen_cosine(8, 1.0, 64);
  Signal equal_power(clean.size());
  for (std::size_t i = 0; i < clean.size(); ++i) equal_power[i] = 2.0 * clean[i];
  // noise == clean, so the ratio is exactly one
  CHECK(measure_snr(clean, equal_power) == doctest::Approx(0.0).epsilon(1e-12));

  Signal tenth(clean.size());
  double s = 1.0 / std::sqrt(10.0);
  for (std::size_t i = 0; i < clean.size(); ++i) tenth[i] = clean[i] + s * clean[i];
  CHECK(measure_snr(clean, tenth) == doctest::Approx(10.0).epsilon(1e-12));

  Signal shorter(clean.begin(), clean.end() - 1);
  CHECK_THROWS_AS(measure_snr(clean, shorter), Error);
  CHECK_THROWS_AS(measure_snr(clean, clean), Error);
}

TEST_CASE("synthesize builds zero-mean components that sum to clean") {
  std::vector<ComponentSpec> specs = {{8, Waveform::Triangular, 1.0},
                                      {11, Waveform::Cosine, 1.0},
                                      {16, Waveform::Triangular, 1.0}};
  GroundTruth gt = synthesize(specs, 4119, 32.0, 9);
  REQUIRE(gt.components.size() == 3);
  Signal sum(4119, 0.0);
  for (const auto& [p, comp] : gt.components) {
    std::size_t whole = (4119 / p) * p;
    CHECK(std::abs(mean_of(std::span(comp).first(whole))) <= 1e-12);
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += comp[i];
  }
  for (std::size_t i = 0; i < sum.size(); ++i)
    CHECK(gt.clean[i] == doctest::Approx(sum[i]).epsilon(1e-15));
  CHECK(measure_snr(gt.clean, gt.noisy) == doctest::Approx(32.0).epsilon(0.02));

  std::vector<ComponentSpec> dup = {{8, Waveform::Triangular, 1.0},
                                    {8, Waveform::Cosine, 1.0}};
  CHECK_THROWS_AS(synthesize(dup, 100, 10.0, 1), Error);
}
