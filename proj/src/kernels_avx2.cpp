// AVX2 kernel variants. This translation unit is the only one compiled with
// -mavx2; callers reach it through the runtime dispatch table, so nothing
// here executes on CPUs without AVX2.
//
// col_moments deliberately avoids FMA: each column's accumulation chain then
// performs the same mul/add sequence as the scalar reference, which makes
// the two implementations bit-identical.

#include "periodkit/kernels.hpp"

#include <immintrin.h>

#include <algorithm>

namespace periodkit::kernels {

namespace {

void col_moments_avx2(const double* data, std::size_t rows, std::size_t cols,
                      double* sum, double* sumsq) {
  std::fill_n(sum, cols, 0.0);
  std::fill_n(sumsq, cols, 0.0);
  const double* ref = data;
  for (std::size_t r = 1; r < rows; ++r) {
    const double* row = data + r * cols;
    std::size_t c = 0;
    for (; c + 4 <= cols; c += 4) {
      __m256d d = _mm256_sub_pd(_mm256_loadu_pd(row + c), _mm256_loadu_pd(ref + c));
      __m256d s = _mm256_add_pd(_mm256_loadu_pd(sum + c), d);
      __m256d q = _mm256_add_pd(_mm256_loadu_pd(sumsq + c), _mm256_mul_pd(d, d));
      _mm256_storeu_pd(sum + c, s);
      _mm256_storeu_pd(sumsq + c, q);
    }
    for (; c < cols; ++c) {
      double d = row[c] - ref[c];
      sum[c] += d;
      sumsq[c] += d * d;
    }
  }
}

double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

double sum_squares_avx2(const double* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d v = _mm256_loadu_pd(x + i);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(v, v));
  }
  double out = hsum(acc);
  for (; i < n; ++i) out += x[i] * x[i];
  return out;
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  }
  double out = hsum(acc);
  for (; i < n; ++i) out += a[i] * b[i];
  return out;
}

constexpr Impl kAvx2Impl{"avx2", col_moments_avx2, sum_squares_avx2, dot_avx2};

}  // namespace

const Impl& avx2_impl() { return kAvx2Impl; }

}  // namespace periodkit::kernels
