#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace periodkit {

// Default seed used by the CLI and the experiment harness when none is given.
inline constexpr std::uint64_t kDefaultSeed = 176176;

// SplitMix64-based mixing. Used to derive independent, reproducible streams
// from (seed, counter...) tuples, e.g. one stream per (seed, run, period).
inline constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

inline constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a,
                                           std::uint64_t b = 0, std::uint64_t c = 0) {
  std::uint64_t h = mix64(base ^ 0x8BADF00D5EEDull);
  h = mix64(h ^ mix64(a));
  h = mix64(h ^ mix64(b + 0xD1B54A32D192ED03ull));
  h = mix64(h ^ mix64(c + 0x2545F4914F6CDD1Dull));
  return h;
}

// Small deterministic generator. Not std::mt19937 on purpose: the stream must
// be identical across platforms and standard libraries, since seeds are part
// of the file-level reproducibility contract.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, bound). Multiply-shift reduction; the bias of
  // bound/2^64 is far below anything observable here.
  std::uint64_t below(std::uint64_t bound) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * bound) >> 64);
  }

  // Standard normal via Box-Muller; generates pairs, caches the spare.
  double gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = 1.0 - uniform();  // (0, 1]
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace periodkit
