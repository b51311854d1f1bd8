#include "periodkit/kernels.hpp"

#include <algorithm>
#include <atomic>
#include <vector>

namespace periodkit::kernels {

namespace {

void col_moments_scalar(const double* data, std::size_t rows, std::size_t cols,
                        double* sum, double* sumsq) {
  std::fill_n(sum, cols, 0.0);
  std::fill_n(sumsq, cols, 0.0);
  const double* ref = data;  // row 0
  for (std::size_t r = 1; r < rows; ++r) {
    const double* row = data + r * cols;
    for (std::size_t c = 0; c < cols; ++c) {
      double d = row[c] - ref[c];
      sum[c] += d;
      sumsq[c] += d * d;
    }
  }
}

double sum_squares_scalar(const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * x[i];
  return acc;
}

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

constexpr Impl kScalarImpl{"scalar", col_moments_scalar, sum_squares_scalar, dot_scalar};

std::vector<Impl> detect_impls();

const std::vector<Impl>& impls() {
  static const std::vector<Impl> v = detect_impls();
  return v;
}

std::atomic<const Impl*> g_active{nullptr};

}  // namespace

#if PERIODKIT_HAVE_AVX2_TU
const Impl& avx2_impl();  // defined in kernels_avx2.cpp
#endif
#if PERIODKIT_HAVE_NEON_TU
const Impl& neon_impl();  // defined in kernels_neon.cpp
#endif

namespace {

std::vector<Impl> detect_impls() {
  std::vector<Impl> v{kScalarImpl};
#if PERIODKIT_HAVE_AVX2_TU
#if defined(__x86_64__) || defined(__i386__)
  if (__builtin_cpu_supports("avx2")) v.push_back(avx2_impl());
#endif
#endif
#if PERIODKIT_HAVE_NEON_TU
  v.push_back(neon_impl());  // NEON is baseline on aarch64
#endif
  return v;
}

}  // namespace

std::span<const Impl> implementations() { return impls(); }

const Impl& active() {
  const Impl* p = g_active.load(std::memory_order_acquire);
  if (p == nullptr) {
    p = &impls().back();
    g_active.store(p, std::memory_order_release);
  }
  return *p;
}

bool set_active(std::string_view name) {
  for (const Impl& impl : impls()) {
    if (name == impl.name) {
      g_active.store(&impl, std::memory_order_release);
      return true;
    }
  }
  return false;
}

}  // namespace periodkit::kernels
