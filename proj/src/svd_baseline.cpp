#include "periodkit/svd_baseline.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <cmath>

#include "periodkit/errors.hpp"

namespace periodkit {

namespace {

using RowMajorMap =
    Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;

// Bidiagonalization-class SVD of the (tall-side-first) matrix. Accurate to
// machine epsilon in sigma2 even when the matrix is numerically rank one,
// which the cap threshold below depends on; a Gram-matrix eigensolve tops
// out around sqrt(eps) there and cannot honor a 1e-12 cap.
std::pair<double, double> top_two(const double* data, std::size_t rows, std::size_t cols) {
  RowMajorMap m(data, static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  Eigen::MatrixXd tall = (rows >= cols) ? Eigen::MatrixXd(m) : Eigen::MatrixXd(m.transpose());
  if (tall.cols() == 1) {
    return {tall.norm(), 0.0};
  }
  Eigen::BDCSVD<Eigen::MatrixXd> svd(tall);
  const auto& s = svd.singularValues();
  return {s[0], s[1]};
}

}  // namespace

std::pair<double, double> top_two_singular_values(const DataMatrix& d) {
  if (d.rows == 0 || d.period == 0) throw Error(Errc::BadParams, "empty data matrix");
  return top_two(d.values.data(), d.rows, d.period);
}

SvdSpectrum svd_spectrum(std::span<const double> signal, const SvdParams& params) {
  std::size_t n = signal.size();
  if (n < 4) throw Error(Errc::TooShort, "svd spectrum needs N >= 4");
  SvdSpectrum sp;
  sp.signal_length = n;
  sp.cap_value = params.cap_value;
  std::size_t p_max = n / 2;
  sp.ratios.resize(p_max - 1);
  for (std::size_t p = 2; p <= p_max; ++p) {
    std::size_t m = n / p;
    auto [s1, s2] = top_two(signal.data(), m, p);
    sp.ratios[p - 2] = (s2 <= params.cap_threshold * s1) ? params.cap_value : s1 / s2;
  }
  return sp;
}

PeriodEstimate estimate_period_svd(std::span<const double> signal, const SvdParams& params) {
  SvdSpectrum sp = svd_spectrum(signal, params);
  std::size_t best_idx = 0;
  for (std::size_t i = 1; i < sp.ratios.size(); ++i) {
    if (sp.ratios[i] > sp.ratios[best_idx]) best_idx = i;  // ties keep smallest P
  }
  PeriodEstimate est;
  est.period = sp.min_period() + best_idx;
  est.score = sp.ratios[best_idx];
  est.method = Method::SVD;
  return est;
}

}  // namespace periodkit
