#include "periodkit/signal.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "periodkit/errors.hpp"
#include "periodkit/kernels.hpp"
#include "periodkit/rng.hpp"

namespace periodkit {

namespace {

void check_gen_params(std::size_t period, double amplitude, std::size_t n) {
  if (period < 2) throw Error(Errc::BadParams, "period must be >= 2");
  if (!(amplitude > 0.0)) throw Error(Errc::BadParams, "amplitude must be > 0");
  if (n < period) throw Error(Errc::BadParams, "length must cover one period");
}

// Tiling a single template keeps x[k + period] == x[k] exact in floating
// point, which the noiseless zero-variance properties rely on.
Signal tile(const std::vector<double>& tmpl, std::size_t n) {
  Signal out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = tmpl[i % tmpl.size()];
  return out;
}

void subtract_mean(std::vector<double>& v) {
  double m = mean_of(v);
  for (double& x : v) x -= m;
}

}  // namespace

const char* waveform_name(Waveform w) {
  switch (w) {
    case Waveform::Triangular: return "tri";
    case Waveform::Cosine: return "cos";
    case Waveform::RandomPattern: return "rand";
  }
  return "?";
}

Waveform waveform_from_name(const std::string& name) {
  if (name == "tri") return Waveform::Triangular;
  if (name == "cos") return Waveform::Cosine;
  if (name == "rand") return Waveform::RandomPattern;
  throw Error(Errc::BadParams, "unknown waveform '" + name + "' (want tri|cos|rand)");
}

Signal gen_triangular(std::size_t period, double amplitude, std::size_t n) {
  check_gen_params(period, amplitude, n);
  std::size_t peak = period / 2;
  std::vector<double> tmpl(period);
  for (std::size_t i = 0; i < period; ++i) {
    if (i <= peak) {
      tmpl[i] = amplitude * static_cast<double>(i) / static_cast<double>(peak);
    } else {
      tmpl[i] = amplitude * static_cast<double>(period - i) /
                static_cast<double>(period - peak);
    }
  }
  subtract_mean(tmpl);
  return tile(tmpl, n);
}

Signal gen_cosine(std::size_t period, double amplitude, std::size_t n) {
  check_gen_params(period, amplitude, n);
  std::vector<double> tmpl(period);
  for (std::size_t i = 0; i < period; ++i) {
    tmpl[i] = amplitude *
              std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                       static_cast<double>(period));
  }
  return tile(tmpl, n);
}

Signal gen_random_pattern(std::size_t period, double amplitude, std::size_t n,
                          std::uint64_t seed) {
  check_gen_params(period, amplitude, n);
  Rng rng(seed);
  std::vector<double> tmpl(period);
  for (double& v : tmpl) v = amplitude * rng.uniform();
  subtract_mean(tmpl);
  return tile(tmpl, n);
}

Signal compose(std::span<const Signal> components) {
  if (components.empty()) throw Error(Errc::BadParams, "nothing to compose");
  Signal out = components[0];
  for (std::size_t i = 1; i < components.size(); ++i) {
    if (components[i].size() != out.size())
      throw Error(Errc::LengthMismatch, "component lengths differ");
    for (std::size_t k = 0; k < out.size(); ++k) out[k] += components[i][k];
  }
  return out;
}

Signal add_noise_snr(const Signal& clean, double snr_db, std::uint64_t seed) {
  if (std::isinf(snr_db) && snr_db > 0) return clean;
  double p = power_of(clean);
  if (!(p > 0.0)) throw Error(Errc::ZeroPowerSignal, "clean signal has zero power");
  double sigma = std::sqrt(p / std::pow(10.0, snr_db / 10.0));
  Rng rng(seed);
  Signal out(clean.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = clean[i] + sigma * rng.gaussian();
  return out;
}

double measure_snr(const Signal& clean, const Signal& noisy) {
  if (clean.size() != noisy.size())
    throw Error(Errc::LengthMismatch, "measure_snr needs equal lengths");
  double num = kernels::sum_squares(clean);
  double den = 0.0;
  for (std::size_t i = 0; i < clean.size(); ++i) {
    double d = noisy[i] - clean[i];
    den += d * d;
  }
  if (den == 0.0) throw Error(Errc::ZeroNoise, "noisy equals clean");
  return 10.0 * std::log10(num / den);
}

double mean_of(std::span<const double> x) {
  double acc = 0.0;
  for (double v : x) acc += v;
  return x.empty() ? 0.0 : acc / static_cast<double>(x.size());
}

double power_of(std::span<const double> x) {
  if (x.empty()) return 0.0;
  return kernels::sum_squares(x) / static_cast<double>(x.size());
}

GroundTruth synthesize(std::span<const ComponentSpec> specs, std::size_t n,
                       double snr_db, std::uint64_t seed) {
  if (specs.empty()) throw Error(Errc::BadParams, "no components");
  GroundTruth gt;
  gt.snr_db = snr_db;
  gt.seed = seed;
  std::vector<Signal> parts;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const ComponentSpec& s = specs[i];
    Signal sig;
    switch (s.wave) {
      case Waveform::Triangular: sig = gen_triangular(s.period, s.amplitude, n); break;
      case Waveform::Cosine: sig = gen_cosine(s.period, s.amplitude, n); break;
      case Waveform::RandomPattern:
        sig = gen_random_pattern(s.period, s.amplitude, n, derive_seed(seed, i, 0x7E3));
        break;
    }
    if (gt.components.count(s.period))
      throw Error(Errc::BadParams, "duplicate hidden period");
    parts.push_back(sig);
    gt.components.emplace(s.period, std::move(sig));
  }
  gt.clean = compose(parts);
  gt.noisy = add_noise_snr(gt.clean, snr_db, derive_seed(seed, 0, 0x015E));
  return gt;
}

}  // namespace periodkit
