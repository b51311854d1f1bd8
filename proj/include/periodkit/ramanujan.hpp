#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "periodkit/numtheory.hpp"
#include "periodkit/signal.hpp"

namespace periodkit {

// Integer basis of R^p grouped by divisor: block q holds the phi(q) circular
// shifts (0..phi(q)-1) of the period-p tiling of c_q. Since
// sum_{q|p} phi(q) = p the matrix is square, and it has full rank.
struct RamanujanBasis {
  struct Block {
    std::size_t start = 0;  // first column of the block
    std::size_t width = 0;  // phi(q)
  };

  std::size_t period = 0;
  std::vector<std::size_t> divisors;           // ascending
  std::vector<int> values;                     // row-major period x period
  std::map<std::size_t, Block> block_offsets;  // divisor q -> its column block

  int at(std::size_t row, std::size_t col) const { return values[row * period + col]; }
};

RamanujanBasis build_basis(std::size_t period);

// Period-p summary of a signal and its split across the divisor subspaces.
// projections[q] is the component of `folded` lying in S_q; the pieces are
// mutually orthogonal and sum back to `folded`.
struct Decomposition {
  std::size_t period = 0;
  std::vector<double> folded;  // average of the floor(N/p) length-p blocks
  std::map<std::size_t, std::vector<double>> projections;
  std::map<std::size_t, double> energies;  // squared norm per subspace
  double dc_value = 0.0;                   // the constant level of the S_1 part
};

// Truncates the signal to floor(N/p)*p samples, folds (averages) the blocks
// into one length-p vector, and solves basis * a = folded to split it.
Decomposition decompose(std::span<const double> signal, std::size_t period);

// energies normalized to sum to 1.
std::map<std::size_t, double> normalized_strengths(const Decomposition& dec);

// Reconstructed hidden components, each rendered over the full composite
// period, plus the DC weights used.
struct ComponentSet {
  std::map<std::size_t, std::vector<double>> components;
  std::map<std::size_t, double> alphas;
  double dc_value = 0.0;
};

// Assigns every energetic subspace q > 1 to the smallest hidden period it
// divides (subspaces dividing none are treated as noise and dropped), then
// spreads the DC level equally via redistribute_dc.
ComponentSet reconstruct_components(const Decomposition& dec,
                                    std::span<const std::size_t> hidden_periods);

// Adds alpha_i * d to each raw (zero-mean) component with the equal split
// alpha_i = 1/k, the correlation-maximizing choice when the per-component
// DC levels are unknown.
ComponentSet redistribute_dc(const std::map<std::size_t, std::vector<double>>& raw_components,
                             double dc_value);

}  // namespace periodkit
