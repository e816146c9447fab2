#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ccc/chain.hpp"
#include "ccc/lattice.hpp"

namespace ccc {

/// Nearest member of Gamma_C to w. Each residue class is rounded coordinate
/// by coordinate (halves go down); ties across classes go to the
/// lexicographically smallest point.
Point nearest(const CodeChain& chain, std::span<const double> w);

struct NsmEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  BigInt covolume_num;  // 2^(Ln) / prod |C_i|, in lowest terms
  BigInt covolume_den;
  double covolume = 0.0;
};

/// Monte Carlo normalized second moment over uniform w in [0, 2^L)^n.
/// Coordinates come from a SplitMix64 stream indexed by (sample, coordinate),
/// and partial sums are merged in a fixed order, so the result does not
/// depend on the thread count. samples >= 1000.
NsmEstimate nsm_estimate(const CodeChain& chain, std::uint64_t samples, std::uint64_t seed,
                         unsigned threads = 0);

/// Two levels: the [n,1,n] repetition code over the [n,n-1,2] even-weight code.
CodeChain dplus_chain(int n);

}  // namespace ccc
