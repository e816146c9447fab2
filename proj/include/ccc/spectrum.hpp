#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "ccc/chain.hpp"

namespace ccc {

/// N(c, d^2) for 0 < d^2 <= r2max. Distances are always squared integers.
struct SpectrumTable {
  Point center;
  Int r2max = 0;
  std::map<Int, std::uint64_t> counts;

  std::uint64_t at(Int d2) const {
    auto it = counts.find(d2);
    return it == counts.end() ? 0 : it->second;
  }
  std::optional<Int> min_distance2() const {
    if (counts.empty()) return std::nullopt;
    return counts.begin()->first;
  }
  std::uint64_t total() const;
};

/// |a_i| == |b_i| for every i.
bool cw_equidistant(std::span<const Int> a, std::span<const Int> b);

/// Direct enumeration of every residue translate s + 2^L z inside the ball of
/// squared radius r2max around c. Throws NotAMember for c outside Gamma_C and
/// GuardExceeded past 10^8 enumerated points.
SpectrumTable spectrum_at(const CodeChain& chain, std::span<const Int> c, Int r2max);

/// Spectra at every residue (in residue order). Uses per-class distance
/// series over (Z/2^L)^n when they fit in memory and falls back to
/// spectrum_at otherwise.
std::vector<SpectrumTable> residue_spectra(const CodeChain& chain, Int r2max, unsigned threads = 0);

/// Four squared periods, 4 * 4^L.
Int default_r2max(const CodeChain& chain);

struct EdsWitness {
  Point center;        // first residue, the reference N(d)
  Point other;         // first residue whose table differs
  Int d2 = 0;          // smallest squared distance where they differ
  std::uint64_t count_center = 0;
  std::uint64_t count_other = 0;
};

struct EdsResult {
  bool equal = false;
  std::optional<EdsWitness> witness;
  SpectrumTable reference;  // spectrum at the first residue
};

EdsResult eds_check(const CodeChain& chain, Int r2max, unsigned threads = 0);

struct KissingStats {
  Int d2min = 0;
  std::set<std::uint64_t> kissing_values;  // N(c, d2min) over all residues c
};

KissingStats kissing_stats(const CodeChain& chain, unsigned threads = 0);

/// Distinct points base + (s_1 |e_1|, ..., s_n |e_n|) over all sign patterns,
/// sorted lexicographically.
std::vector<Point> cw_candidates(std::span<const Int> base, std::span<const Int> e);

/// Number of y in Gamma_C with y - x coordinate-wise equi-distant to e.
std::uint64_t cw_count(const CodeChain& chain, std::span<const Int> x, std::span<const Int> e);

}  // namespace ccc
