// NEON kernel variants (aarch64). Mirrors the AVX2 file at 2-wide; same
// no-FMA rule so col_moments stays bit-identical to the scalar reference.

#include "periodkit/kernels.hpp"

#include <arm_neon.h>

#include <algorithm>

namespace periodkit::kernels {

namespace {

void col_moments_neon(const double* data, std::size_t rows, std::size_t cols,
                      double* sum, double* sumsq) {
  std::fill_n(sum, cols, 0.0);
  std::fill_n(sumsq, cols, 0.0);
  const double* ref = data;
  for (std::size_t r = 1; r < rows; ++r) {
    const double* row = data + r * cols;
    std::size_t c = 0;
    for (; c + 2 <= cols; c += 2) {
      float64x2_t d = vsubq_f64(vld1q_f64(row + c), vld1q_f64(ref + c));
      vst1q_f64(sum + c, vaddq_f64(vld1q_f64(sum + c), d));
      vst1q_f64(sumsq + c, vaddq_f64(vld1q_f64(sumsq + c), vmulq_f64(d, d)));
    }
    for (; c < cols; ++c) {
      double d = row[c] - ref[c];
      sum[c] += d;
      sumsq[c] += d * d;
    }
  }
}

double sum_squares_neon(const double* x, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t v = vld1q_f64(x + i);
    acc = vaddq_f64(acc, vmulq_f64(v, v));
  }
  double out = vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
  for (; i < n; ++i) out += x[i] * x[i];
  return out;
}

double dot_neon(const double* a, const double* b, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    acc = vaddq_f64(acc, vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
  }
  double out = vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
  for (; i < n; ++i) out += a[i] * b[i];
  return out;
}

constexpr Impl kNeonImpl{"neon", col_moments_neon, sum_squares_neon, dot_neon};

}  // namespace

const Impl& neon_impl() { return kNeonImpl; }

}  // namespace periodkit::kernels
