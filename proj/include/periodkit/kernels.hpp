#pragma once

#include <cstddef>
#include <span>
#include <string_view>

// Data-parallel inner loops behind the variance/energy computations.
//
// Every kernel has a scalar reference implementation plus SIMD variants
// (AVX2 on x86-64, NEON on aarch64) selected at runtime from CPU features.
// col_moments accumulates each column independently in row order, so the
// SIMD variants are bit-identical to the scalar reference; the reduction
// kernels (sum_squares, dot) reassociate across lanes and agree only up to
// rounding. Equivalence of all variants is enforced by tests/test_kernels.

namespace periodkit::kernels {

struct Impl {
  const char* name;

  // Per-column sums of deviations from row 0 of a row-major rows x cols
  // block:
  //   sum[c]   = sum_{r>=1} (data[r*cols + c] - data[c])
  //   sumsq[c] = sum_{r>=1} (data[r*cols + c] - data[c])^2
  // Row 0 contributes zero by construction and is skipped. sum/sumsq are
  // overwritten. Shifted-data moments keep the later variance computation
  // well conditioned when columns are near-constant (the case that matters:
  // a matched period makes columns constant up to noise).
  void (*col_moments)(const double* data, std::size_t rows, std::size_t cols,
                      double* sum, double* sumsq);

  double (*sum_squares)(const double* x, std::size_t n);

  double (*dot)(const double* a, const double* b, std::size_t n);
};

// All implementations usable on this machine; index 0 is the scalar
// reference, later entries are progressively wider.
std::span<const Impl> implementations();

// Currently selected implementation (the widest available by default).
const Impl& active();

// Force a specific implementation by name ("scalar", "avx2", "neon").
// Returns false if that implementation is not available on this machine.
bool set_active(std::string_view name);

inline double sum_squares(std::span<const double> x) {
  return active().sum_squares(x.data(), x.size());
}

inline double dot(std::span<const double> a, std::span<const double> b) {
  return active().dot(a.data(), b.data(), a.size());
}

}  // namespace periodkit::kernels
