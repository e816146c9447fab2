#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ccc/chain.hpp"

namespace ccc {

/// The image of Gamma_C = C_1 + 2C_2 + ... + 2^(L-1)C_L + 2^L Z^n modulo
/// 2^L Z^n. Residues are stored flat, sorted lexicographically, one per
/// combination of codewords (the digit map is injective).
class ResidueSet {
 public:
  static constexpr std::size_t kMaxResidues = std::size_t{1} << 22;

  ResidueSet(int n, Int modulus, std::vector<Int> flat);

  int length() const { return n_; }
  Int modulus() const { return modulus_; }
  std::size_t size() const { return n_ == 0 ? 0 : coords_.size() / static_cast<std::size_t>(n_); }

  std::span<const Int> operator[](std::size_t i) const {
    return {coords_.data() + i * static_cast<std::size_t>(n_), static_cast<std::size_t>(n_)};
  }
  Point point(std::size_t i) const {
    auto s = (*this)[i];
    return Point(s.begin(), s.end());
  }
  std::vector<Point> points() const;

  /// Binary search for a reduced point (coordinates already in [0, modulus)).
  bool contains_reduced(std::span<const Int> p) const;

  bool operator==(const ResidueSet& other) const = default;

 private:
  int n_;
  Int modulus_;
  std::vector<Int> coords_;
};

ResidueSet residues(const CodeChain& chain);

/// Digit test: p mod 2^L must have base-2 digit words d_i in C_i.
bool contains(const CodeChain& chain, std::span<const Int> p);

struct Decomposition {
  std::vector<BitWord> digits;  // one word per level
  Point z;                      // p = sum_i 2^i digits[i] + 2^L z
};

/// Throws NotAMember when p is not in Gamma_C.
Decomposition decompose(const CodeChain& chain, std::span<const Int> p);
Point recompose(const CodeChain& chain, const Decomposition& d);

/// Members of Gamma_C in the closed box [lo, hi], sorted lexicographically.
std::vector<Point> points_in_box(const CodeChain& chain, std::span<const Int> lo,
                                 std::span<const Int> hi);

}  // namespace ccc
