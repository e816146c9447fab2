#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ccc/f2core.hpp"

namespace ccc {

using Int = std::int64_t;

/// A point of Z^n. std::vector's ordering is the lexicographic order used for
/// every deterministic tie-break.
using Point = std::vector<Int>;

Int norm2(std::span<const Int> v);
Point sub(std::span<const Int> a, std::span<const Int> b);
Point add(std::span<const Int> a, std::span<const Int> b);

/// Floor-style remainder in [0, m).
inline Int mod_floor(Int a, Int m) {
  Int r = a % m;
  return r < 0 ? r + m : r;
}

inline Int div_floor(Int a, Int m) {
  Int q = a / m;
  return (a % m != 0 && ((a < 0) != (m < 0))) ? q - 1 : q;
}

/// L binary codes of a common length n. Level indices are 0-based in the API
/// (level 0 carries weight 1, level L-1 carries weight 2^(L-1)); reports and
/// witnesses print them 1-based.
class CodeChain {
 public:
  static constexpr int kMaxLevels = 16;

  explicit CodeChain(std::vector<BinaryCode> codes);

  int length() const { return n_; }
  int levels() const { return static_cast<int>(codes_.size()); }
  Int modulus() const { return Int{1} << levels(); }

  const BinaryCode& code(int level) const { return codes_.at(static_cast<std::size_t>(level)); }
  std::span<const BinaryCode> codes() const { return codes_; }

  bool all_linear() const;
  /// C_1 subset C_2 subset ... subset C_L.
  bool nested() const;

  /// Product of the code sizes, saturated at UINT64_MAX.
  std::uint64_t residue_count() const;

  bool operator==(const CodeChain& other) const = default;

 private:
  int n_ = 0;
  std::vector<BinaryCode> codes_;
};

struct SchurWitness {
  int level = 0;  // 1-based: x, y in C_level, x*y not in C_(level+1)
  BitWord x;
  BitWord y;
};

struct SchurClosure {
  bool closed = false;
  std::optional<SchurWitness> witness;
};

/// Checks C_i * C_i subset C_(i+1) for every i < L. Products at the top level
/// are absorbed by 2^L Z^n and are not tested. Requires a nested chain of
/// linear codes. The witness is the first violating (level, x, y) with x <= y
/// in lexicographic order.
SchurClosure schur_closed_chain(const CodeChain& chain);

}  // namespace ccc
