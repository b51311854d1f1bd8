#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "periodkit/data_matrix.hpp"
#include "periodkit/period_finder.hpp"

namespace periodkit {

struct SvdParams {
  double cap_value = 1e15;       // stands in for an infinite ratio
  double cap_threshold = 1e-12;  // cap when sigma2 <= threshold * sigma1
};

// sigma1/sigma2 of the data matrix per assumed period P in [2, floor(N/2)];
// a vanishing sigma2 (noiseless periodic block) records cap_value.
struct SvdSpectrum {
  std::size_t signal_length = 0;
  double cap_value = 0.0;
  std::vector<double> ratios;  // ratios[i] belongs to P = i + 2

  std::size_t min_period() const { return 2; }
  std::size_t max_period() const { return signal_length / 2; }
  double at(std::size_t period) const { return ratios[period - 2]; }
};

// Two largest singular values, sigma1 >= sigma2 >= 0.
std::pair<double, double> top_two_singular_values(const DataMatrix& d);

SvdSpectrum svd_spectrum(std::span<const double> signal, const SvdParams& params = {});

// argmax of the ratio spectrum; ties break to the smallest period.
PeriodEstimate estimate_period_svd(std::span<const double> signal,
                                   const SvdParams& params = {});

}  // namespace periodkit
