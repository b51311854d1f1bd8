#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace periodkit {

// The floor(N/P) x P matrix of consecutive length-P blocks of a signal;
// the trailing N mod P samples are dropped.
struct DataMatrix {
  std::size_t period = 0;       // P, the column count
  std::size_t rows = 0;         // m = floor(N/P)
  std::vector<double> values;   // row-major, rows * period entries

  double at(std::size_t r, std::size_t c) const { return values[r * period + c]; }
};

// Requires 2 <= P <= floor(N/2) so the matrix has at least two rows.
DataMatrix build_data_matrix(std::span<const double> signal, std::size_t period);

// Mean over columns of the per-column population variance (divide by m).
double column_variance_mean(const DataMatrix& d);

// Same quantity computed in place over a signal prefix, no matrix
// materialisation; scratch buffers must hold at least `cols` doubles.
double mean_column_popvar(const double* data, std::size_t rows, std::size_t cols,
                          double* sum_scratch, double* sumsq_scratch);

}  // namespace periodkit
