#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace periodkit {

// A finite real-valued sample sequence. The whole toolkit trades in these.
using Signal = std::vector<double>;

enum class Waveform { Triangular, Cosine, RandomPattern };

const char* waveform_name(Waveform w);
Waveform waveform_from_name(const std::string& name);  // "tri" | "cos" | "rand"

// Mean-zero triangular wave: linear ramp up to `amplitude` at floor(period/2),
// back down, mean-subtracted, tiled to n samples. Exactly period-periodic.
Signal gen_triangular(std::size_t period, double amplitude, std::size_t n);

// amplitude * cos(2*pi*k/period), one template period tiled to n samples so
// periodicity is exact in floating point.
Signal gen_cosine(std::size_t period, double amplitude, std::size_t n);

// Uniform random template of length `period`, mean-subtracted, scaled by
// `amplitude`, tiled. Deterministic per seed.
Signal gen_random_pattern(std::size_t period, double amplitude, std::size_t n,
                          std::uint64_t seed);

// Elementwise sum of equal-length signals.
Signal compose(std::span<const Signal> components);

// clean + white Gaussian noise scaled so that the clean-power to
// noise-power ratio is snr_db (mean-square convention). An infinite snr_db
// returns the signal unchanged.
Signal add_noise_snr(const Signal& clean, double snr_db, std::uint64_t seed);

// 10*log10(sum clean^2 / sum (noisy - clean)^2).
double measure_snr(const Signal& clean, const Signal& noisy);

double mean_of(std::span<const double> x);
double power_of(std::span<const double> x);  // mean square

struct ComponentSpec {
  std::size_t period = 0;
  Waveform wave = Waveform::Triangular;
  double amplitude = 1.0;
};

struct GroundTruth {
  std::map<std::size_t, Signal> components;  // full-length tilings, zero-mean
  Signal clean;                              // elementwise sum of components
  Signal noisy;
  double snr_db = 0.0;
  std::uint64_t seed = 0;
};

GroundTruth synthesize(std::span<const ComponentSpec> specs, std::size_t n,
                       double snr_db, std::uint64_t seed);

}  // namespace periodkit
