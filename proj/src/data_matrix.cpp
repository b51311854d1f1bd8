#include "periodkit/data_matrix.hpp"

#include <algorithm>

#include "periodkit/errors.hpp"
#include "periodkit/kernels.hpp"

namespace periodkit {

DataMatrix build_data_matrix(std::span<const double> signal, std::size_t period) {
  std::size_t n = signal.size();
  if (period < 2 || period > n / 2)
    throw Error(Errc::BadPeriod, "assumed period must lie in [2, N/2]");
  DataMatrix d;
  d.period = period;
  d.rows = n / period;
  d.values.assign(signal.begin(), signal.begin() + static_cast<std::ptrdiff_t>(d.rows * period));
  return d;
}

double mean_column_popvar(const double* data, std::size_t rows, std::size_t cols,
                          double* sum_scratch, double* sumsq_scratch) {
  kernels::active().col_moments(data, rows, cols, sum_scratch, sumsq_scratch);
  const double m = static_cast<double>(rows);
  double acc = 0.0;
  // Per-column arithmetic mirrors the gathered-subsample path exactly, so a
  // degenerate subsample (all rows, all columns) reproduces this bit for bit.
  for (std::size_t c = 0; c < cols; ++c) {
    double t = sumsq_scratch[c] - sum_scratch[c] * sum_scratch[c] / m;
    if (t > 0.0) acc += t / m;  // t < 0 only from cancellation noise
  }
  return acc / static_cast<double>(cols);
}

double column_variance_mean(const DataMatrix& d) {
  if (d.rows < 2) throw Error(Errc::BadPeriod, "need at least two rows");
  std::vector<double> sum(d.period), sumsq(d.period);
  return mean_column_popvar(d.values.data(), d.rows, d.period, sum.data(), sumsq.data());
}

}  // namespace periodkit
