#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "ccc/chain.hpp"
#include "ccc/spectrum.hpp"

namespace ccc {

/// Diagonal +-1 map. Involutive and norm preserving.
struct ReflectionMap {
  std::vector<int> signs;

  Point apply(std::span<const Int> v) const;
  bool operator==(const ReflectionMap&) const = default;
};

/// signs_i = (-1)^(c1_i) where c1 is the level-1 digit word of x. L must be 2.
ReflectionMap reflection_for(const CodeChain& chain, std::span<const Int> x);

/// T(y - x) written as d1 + 2 d2 + 4 z' with the digit-carry case table of the
/// two-level proof; d1 and d2 are codewords when both codes are linear.
struct ReflectedDifference {
  BitWord d1;
  BitWord d2;
  Point zprime;
};

ReflectedDifference reflected_difference(const CodeChain& chain, std::span<const Int> x,
                                         std::span<const Int> y);

struct GuCertificate {
  Point x;
  ReflectionMap map;
};

struct GuTwoLevelResult {
  bool uniform = false;
  std::vector<GuCertificate> certificates;  // one per residue when uniform
  std::optional<Point> failing_residue;
};

/// For every residue x, checks T(R - x) == R modulo 4 with T = reflection_for(x).
/// Requires L == 2 and linear codes.
GuTwoLevelResult gu_check_two_level(const CodeChain& chain, unsigned threads = 0);

/// y -> signs_i * (y + translation)_(permutation_i)
struct IsometryCandidate {
  std::vector<int> permutation;
  std::vector<int> signs;
  Point translation;

  Point apply(std::span<const Int> y) const;
};

enum class GuVerdict { certified, refuted_by_eds, inconclusive };

const char* to_string(GuVerdict v);

struct GuSearchResult {
  GuVerdict verdict = GuVerdict::inconclusive;
  std::optional<EdsWitness> eds_witness;
  std::vector<std::pair<Point, IsometryCandidate>> isometries;  // residue -> map sending it to 0
  std::optional<Point> unresolved;  // first residue without a signed-permutation symmetry
};

/// EDS first (a failure refutes uniformity); otherwise searches signed
/// permutations composed with the translation by -x for every residue x.
/// n <= 6.
GuSearchResult gu_subgroup_search(const CodeChain& chain, Int r2max, unsigned threads = 0);

/// Per-coordinate bookkeeping of the constructive two-level partner.
/// cases[i] is 1..4 for the four Delta rules; orientation[i] is +1 when
/// y'_i - x'_i = y_i - x_i and -1 when it is the negation.
struct PartnerTrace {
  Point e1, e2, e1p, e2p;
  Point delta;
  std::vector<int> cases;
  std::vector<int> orientation;
  Point zbar;
  Point yprime;
};

/// Constructs y' in Gamma_C with y' - x' coordinate-wise equi-distant to
/// y - x. L == 2, linear codes, all three points members. Throws
/// ConsistencyFailure if the constructed point misses its postcondition.
PartnerTrace partner_lemma1(const CodeChain& chain, std::span<const Int> x, std::span<const Int> y,
                            std::span<const Int> xp);

/// Lexicographically first member among the sign patterns x' +- |y - x|.
std::optional<Point> partner_bruteforce(const CodeChain& chain, std::span<const Int> x,
                                        std::span<const Int> y, std::span<const Int> xp);

/// All members y' with |y' - x'|^2 == |y - x|^2, sorted.
std::vector<Point> euclidean_partners(const CodeChain& chain, std::span<const Int> x,
                                      std::span<const Int> y, std::span<const Int> xp);

std::optional<Point> euclidean_partner_bruteforce(const CodeChain& chain, std::span<const Int> x,
                                                  std::span<const Int> y, std::span<const Int> xp);

}  // namespace ccc
