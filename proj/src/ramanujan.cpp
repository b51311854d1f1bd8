#include "periodkit/ramanujan.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

#include "periodkit/errors.hpp"

namespace periodkit {

RamanujanBasis build_basis(std::size_t period) {
  if (period < 1) throw Error(Errc::BadParams, "period must be >= 1");
  RamanujanBasis rb;
  rb.period = period;
  rb.divisors = divisors(period);
  rb.values.assign(period * period, 0);

  std::size_t col = 0;
  std::vector<int> tiled(period);
  for (std::size_t q : rb.divisors) {
    std::size_t width = euler_totient(q);
    for (std::size_t n = 0; n < period; ++n)
      tiled[n] = static_cast<int>(ramanujan_sum(q, static_cast<long long>(n)));
    for (std::size_t j = 0; j < width; ++j) {
      // column col+j = tiled sequence circularly shifted down by j
      for (std::size_t row = 0; row < period; ++row) {
        std::size_t src = (row + period - j) % period;
        rb.values[row * period + (col + j)] = tiled[src];
      }
    }
    rb.block_offsets.emplace(q, RamanujanBasis::Block{col, width});
    col += width;
  }
  // sum of phi over divisors is exactly p, so the blocks fill the matrix
  if (col != period) throw Error(Errc::BadParams, "divisor blocks do not fill the basis");
  return rb;
}

Decomposition decompose(std::span<const double> signal, std::size_t period) {
  if (period < 1) throw Error(Errc::BadParams, "period must be >= 1");
  if (signal.size() < period)
    throw Error(Errc::InsufficientData, "signal shorter than the period");

  std::size_t m = signal.size() / period;
  Decomposition dec;
  dec.period = period;
  dec.folded.assign(period, 0.0);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t j = 0; j < period; ++j) dec.folded[j] += signal[r * period + j];
  for (double& v : dec.folded) v /= static_cast<double>(m);

  RamanujanBasis rb = build_basis(period);
  Eigen::MatrixXd basis(period, period);
  for (std::size_t r = 0; r < period; ++r)
    for (std::size_t c = 0; c < period; ++c) basis(r, c) = rb.at(r, c);

  Eigen::Map<const Eigen::VectorXd> folded(dec.folded.data(),
                                           static_cast<Eigen::Index>(period));
  Eigen::VectorXd coeff = basis.partialPivLu().solve(folded);

  for (const auto& [q, block] : rb.block_offsets) {
    Eigen::VectorXd xq = basis.middleCols(static_cast<Eigen::Index>(block.start),
                                          static_cast<Eigen::Index>(block.width)) *
                         coeff.segment(static_cast<Eigen::Index>(block.start),
                                       static_cast<Eigen::Index>(block.width));
    dec.energies.emplace(q, xq.squaredNorm());
    dec.projections.emplace(q, std::vector<double>(xq.data(), xq.data() + xq.size()));
  }
  dec.dc_value = dec.projections.at(1)[0];  // S_1 is constant by construction
  return dec;
}

std::map<std::size_t, double> normalized_strengths(const Decomposition& dec) {
  double total = 0.0;
  for (const auto& [q, e] : dec.energies) total += e;
  if (!(total > 0.0)) throw Error(Errc::ZeroEnergy, "decomposition has no energy");
  std::map<std::size_t, double> out;
  for (const auto& [q, e] : dec.energies) out.emplace(q, e / total);
  return out;
}

ComponentSet reconstruct_components(const Decomposition& dec,
                                    std::span<const std::size_t> hidden_periods) {
  if (hidden_periods.empty()) throw Error(Errc::NoComponents, "no hidden periods given");
  std::vector<std::size_t> hidden(hidden_periods.begin(), hidden_periods.end());
  std::sort(hidden.begin(), hidden.end());
  hidden.erase(std::unique(hidden.begin(), hidden.end()), hidden.end());
  for (std::size_t p : hidden) {
    if (p < 2) throw Error(Errc::BadParams, "hidden periods must be >= 2");
    if (dec.period % p != 0)
      throw Error(Errc::NotAFactor, "hidden period does not divide the composite period");
  }

  std::map<std::size_t, std::vector<double>> raw;
  for (std::size_t p : hidden) raw.emplace(p, std::vector<double>(dec.period, 0.0));

  // Each subspace q > 1 feeds the smallest hidden period it divides; shared
  // low-period content therefore lands in the low-period component.
  // Subspaces dividing none of the hidden periods carry noise and are left out.
  for (const auto& [q, xq] : dec.projections) {
    if (q == 1) continue;
    for (std::size_t p : hidden) {
      if (p % q == 0) {
        std::vector<double>& dst = raw.at(p);
        for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += xq[i];
        break;
      }
    }
  }
  return redistribute_dc(raw, dec.dc_value);
}

ComponentSet redistribute_dc(
    const std::map<std::size_t, std::vector<double>>& raw_components, double dc_value) {
  if (raw_components.empty()) throw Error(Errc::NoComponents, "no components");
  std::size_t k = raw_components.size();
  double shift = dc_value / static_cast<double>(k);
  ComponentSet out;
  out.dc_value = dc_value;
  for (const auto& [p, raw] : raw_components) {
    std::vector<double> comp(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) comp[i] = raw[i] + shift;
    out.components.emplace(p, std::move(comp));
    out.alphas.emplace(p, 1.0 / static_cast<double>(k));
  }
  return out;
}

}  // namespace periodkit
