#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "ccc/chain.hpp"

namespace ccc {

using BigInt = boost::multiprecision::cpp_int;

/// A full-rank sublattice of Z^n held as its row Hermite Normal Form: upper
/// triangular, positive pivots, entries above each pivot reduced into
/// [0, pivot). The form is canonical, so lattice equality is basis equality.
class IntegerLattice {
 public:
  int dimension() const { return static_cast<int>(basis_.size()); }
  const std::vector<Point>& basis() const { return basis_; }
  const BigInt& determinant() const { return det_; }

  /// Back-substitution; every pivot must divide exactly.
  bool contains(std::span<const Int> v) const;

  /// modulus^n / det, the number of lattice points per cell of modulus*Z^n.
  /// Throws when det does not divide modulus^n.
  BigInt points_per_period(Int modulus) const;

  bool operator==(const IntegerLattice& other) const { return basis_ == other.basis_; }

 private:
  friend IntegerLattice hnf(std::span<const Point> generators);
  friend IntegerLattice hnf_periodic(std::span<const Point> generators, int n, Int modulus);
  static IntegerLattice from_builder_rows(std::vector<Point> rows);

  std::vector<Point> basis_;
  BigInt det_;
};

/// Canonical HNF of the integer span of `generators`. Throws RankDeficient if
/// the span is not full rank and GuardExceeded if an intermediate value would
/// overflow 64 bits.
IntegerLattice hnf(std::span<const Point> generators);

/// HNF of `generators` together with modulus * e_j for every j. Entries are
/// reduced modulo `modulus` throughout, so this never overflows for
/// modulus < 2^31.
IntegerLattice hnf_periodic(std::span<const Point> generators, int n, Int modulus);

/// Lambda_C: HNF of the residues of Gamma_C together with 2^L e_j.
IntegerLattice smallest_lattice(const CodeChain& chain);

/// Basis b_1..b_n of F_2^n whose first dims[i] rows span C_(i+1).
struct NestedBasis {
  std::vector<BitWord> rows;
  std::vector<int> dims;
};

/// Greedy elimination: a basis of C_1 extended through C_2, ..., C_L, then
/// completed to F_2^n. Candidates are scanned in lexicographic word order.
NestedBasis select_nested_basis(const CodeChain& chain);

/// The alpha-combinations sum_i 2^(i-1) sum_(j <= k_i) alpha_j^i b_j with the
/// bits embedded as integers, one per choice of alpha (2^(sum k_i) points).
std::vector<Point> construction_d_points(const CodeChain& chain);

/// Lambda_D: HNF closure of construction_d_points and 2^L Z^n. Verifies
/// det(Lambda_D) * 2^(sum k_i) == 2^(Ln).
IntegerLattice construction_d(const CodeChain& chain);

struct DirectLatticeTest {
  bool is_lattice = false;
  std::optional<std::pair<Point, Point>> witness;  // residues s <= t with s + t outside
};

/// Closure of the residue set under addition modulo 2^L.
DirectLatticeTest is_lattice_direct(const CodeChain& chain);

/// Independent evaluations of the four equivalent lattice statements for a
/// chain of linear codes. The Schur and Lambda_D statements carry nesting as
/// part of their hypothesis and are false for a chain that is not nested.
struct Theorem1Report {
  bool is_lattice = false;       // residue set closed under addition
  bool equals_lambda_c = false;  // |residues| == 2^(Ln) / det(Lambda_C)
  bool schur_closed = false;     // nested and C_i * C_i subset C_(i+1)
  bool equals_lambda_d = false;  // nested and residues == Lambda_D mod 2^L
  bool nested = false;

  std::size_t residue_count = 0;
  BigInt det_lambda_c;
  BigInt det_lambda_d;  // 0 when not nested
  DirectLatticeTest direct;
  SchurClosure schur;

  bool consistent() const {
    return is_lattice == equals_lambda_c && is_lattice == schur_closed && is_lattice == equals_lambda_d;
  }
};

Theorem1Report theorem1_report(const CodeChain& chain);

}  // namespace ccc
