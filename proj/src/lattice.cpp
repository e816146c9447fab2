#include "ccc/lattice.hpp"

#include <algorithm>
#include <bit>
#include <string>
#include <tuple>

#include "ccc/constellation.hpp"
#include "ccc/error.hpp"

namespace ccc {

namespace {

Int checked_mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) throw GuardExceeded("HNF intermediate value overflows 64 bits");
  return r;
}

Int checked_add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) throw GuardExceeded("HNF intermediate value overflows 64 bits");
  return r;
}

// p*a + q*b = g, g >= 0.
std::tuple<Int, Int, Int> ext_gcd(Int a, Int b) {
  Int old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    const Int q = old_r / r;
    std::tie(old_r, r) = std::make_tuple(r, old_r - q * r);
    std::tie(old_s, s) = std::make_tuple(s, old_s - q * s);
    std::tie(old_t, t) = std::make_tuple(t, old_t - q * t);
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

// a <- a - f*b on columns [from, n)
void axpy(Point& a, Int f, const Point& b, std::size_t from) {
  if (f == 0) return;
  for (std::size_t k = from; k < a.size(); ++k) a[k] = checked_add(a[k], -checked_mul(f, b[k]));
}

// Incremental row-HNF. rows[j] is either empty or has its pivot at column j.
// In periodic mode the builder starts from modulus * I, and since
// modulus * Z^n lies in the lattice every non-pivot entry is kept in
// [0, modulus); all intermediates then stay below modulus^2. Without a
// period the builder adopts det * Z^n as one as soon as the rows reach full
// rank.
class HnfBuilder {
 public:
  explicit HnfBuilder(std::size_t n, Int modulus = 0) : rows_(n), modulus_(modulus) {
    if (modulus_ > 0) {
      for (std::size_t j = 0; j < n; ++j) {
        rows_[j].assign(n, 0);
        rows_[j][j] = modulus_;
      }
    }
  }

  void insert(Point v) {
    const std::size_t n = rows_.size();
    if (v.size() != n) throw LengthMismatch("generator length does not match lattice dimension");
    reduce(v, 0);
    for (std::size_t j = 0; j < n; ++j) {
      if (v[j] == 0) continue;
      if (rows_[j].empty()) {
        if (v[j] < 0) {
          for (auto& x : v) x = -x;
        }
        rows_[j] = std::move(v);
        adopt_period();
        return;
      }
      Point& row = rows_[j];
      const Int a = row[j];
      const Int b = v[j];
      const auto [g, p, q] = ext_gcd(a, b);
      Point combined(n, 0);
      Point rest(n, 0);
      for (std::size_t k = j; k < n; ++k) {
        combined[k] = checked_add(checked_mul(p, row[k]), checked_mul(q, v[k]));
        rest[k] = checked_add(checked_mul(a / g, v[k]), -checked_mul(b / g, row[k]));
      }
      reduce(combined, j + 1);
      reduce(rest, j + 1);
      row = std::move(combined);
      v = std::move(rest);
    }
  }

  std::vector<Point> finish() {
    const std::size_t n = rows_.size();
    for (std::size_t j = 0; j < n; ++j) {
      if (rows_[j].empty()) throw RankDeficient("generators do not span a full-rank lattice");
    }
    // Bottom-up, so every row is reduced against rows that are already
    // canonical; the period keeps the tail entries bounded meanwhile.
    for (std::size_t i = n; i-- > 0;) {
      for (std::size_t k = i + 1; k < n; ++k) {
        axpy(rows_[i], div_floor(rows_[i][k], rows_[k][k]), rows_[k], k);
        reduce(rows_[i], k + 1);
      }
    }
    return std::move(rows_);
  }

 private:
  void adopt_period() {
    if (modulus_ != 0) return;
    Int det = 1;
    for (std::size_t j = 0; j < rows_.size(); ++j) {
      if (rows_[j].empty()) return;
      if (__builtin_mul_overflow(det, rows_[j][j], &det) || det > kMaxAdoptedPeriod) return;
    }
    modulus_ = det;
    for (std::size_t j = 0; j < rows_.size(); ++j) reduce(rows_[j], j + 1);
  }

  // Keeps products of reduced entries inside 64 bits.
  static constexpr Int kMaxAdoptedPeriod = Int{1} << 31;

  void reduce(Point& v, std::size_t from) const {
    if (modulus_ == 0) return;
    for (std::size_t k = from; k < v.size(); ++k) v[k] = mod_floor(v[k], modulus_);
  }

  std::vector<Point> rows_;
  Int modulus_;
};

}  // namespace

IntegerLattice IntegerLattice::from_builder_rows(std::vector<Point> rows) {
  IntegerLattice lat;
  lat.basis_ = std::move(rows);
  lat.det_ = 1;
  for (std::size_t j = 0; j < lat.basis_.size(); ++j) lat.det_ *= lat.basis_[j][j];
  return lat;
}

IntegerLattice hnf(std::span<const Point> generators) {
  if (generators.empty()) throw RankDeficient("no generators");
  HnfBuilder builder(generators.front().size());
  for (const auto& g : generators) builder.insert(g);
  return IntegerLattice::from_builder_rows(builder.finish());
}

IntegerLattice hnf_periodic(std::span<const Point> generators, int n, Int modulus) {
  if (n < 1) throw Error("lattice dimension must be positive");
  if (modulus < 1) throw Error("period must be positive");
  HnfBuilder builder(static_cast<std::size_t>(n), modulus);
  for (const auto& g : generators) builder.insert(g);
  return IntegerLattice::from_builder_rows(builder.finish());
}

bool IntegerLattice::contains(std::span<const Int> v) const {
  if (v.size() != basis_.size()) throw LengthMismatch("vector length does not match lattice dimension");
  Point r(v.begin(), v.end());
  for (std::size_t j = 0; j < r.size(); ++j) {
    const Int pivot = basis_[j][j];
    if (r[j] % pivot != 0) return false;
    axpy(r, r[j] / pivot, basis_[j], j);
  }
  return true;
}

BigInt IntegerLattice::points_per_period(Int modulus) const {
  BigInt volume = 1;
  for (std::size_t j = 0; j < basis_.size(); ++j) volume *= modulus;
  if (volume % det_ != 0) throw Error("lattice does not contain modulus * Z^n");
  return volume / det_;
}

IntegerLattice smallest_lattice(const CodeChain& chain) {
  const ResidueSet res = residues(chain);
  return hnf_periodic(res.points(), chain.length(), chain.modulus());
}

NestedBasis select_nested_basis(const CodeChain& chain) {
  if (!chain.all_linear()) throw HypothesisViolated("nested basis requires linear codes");
  if (!chain.nested()) throw HypothesisViolated("nested basis requires a nested chain");
  const int n = chain.length();
  NestedBasis nb;
  std::uint32_t pivots[32] = {};
  auto try_add = [&](std::uint32_t mask) {
    std::uint32_t v = mask;
    while (v != 0) {
      const int top = 31 - std::countl_zero(v);
      if (pivots[top] == 0) {
        pivots[top] = v;
        nb.rows.emplace_back(n, mask);
        return;
      }
      v ^= pivots[top];
    }
  };
  for (int lv = 0; lv < chain.levels(); ++lv) {
    const BinaryCode& code = chain.code(lv);
    const int dim = code.dimension();
    for (const auto& w : code.words()) {
      if (static_cast<int>(nb.rows.size()) == dim) break;
      try_add(w.mask());
    }
    if (static_cast<int>(nb.rows.size()) != dim) {
      throw ConsistencyFailure("nested basis selection did not reach the code dimension");
    }
    nb.dims.push_back(dim);
  }
  for (std::uint32_t mask = 1; static_cast<int>(nb.rows.size()) < n; ++mask) try_add(mask);
  return nb;
}

std::vector<Point> construction_d_points(const CodeChain& chain) {
  const NestedBasis nb = select_nested_basis(chain);
  const auto n = static_cast<std::size_t>(chain.length());
  int total = 0;
  for (int k : nb.dims) total += k;
  if (total > 22) throw GuardExceeded("more than 2^22 Construction D combinations");

  // Generator g_(level, j) = 2^level * b_j for j < k_level; each point is the
  // sum of the generators selected by one bit of the counter.
  std::vector<Point> gens;
  for (std::size_t lv = 0; lv < nb.dims.size(); ++lv) {
    for (int j = 0; j < nb.dims[lv]; ++j) {
      Point g(n, 0);
      const BitWord& b = nb.rows[static_cast<std::size_t>(j)];
      for (std::size_t i = 0; i < n; ++i) g[i] = b[static_cast<int>(i)] ? (Int{1} << lv) : 0;
      gens.push_back(std::move(g));
    }
  }
  const std::size_t count = std::size_t{1} << total;
  std::vector<Point> out;
  out.reserve(count);
  Point acc(n, 0);
  out.push_back(acc);
  // Gray-code order, then sorted for determinism.
  std::vector<bool> on(gens.size(), false);
  for (std::size_t t = 1; t < count; ++t) {
    const auto bit = static_cast<std::size_t>(std::countr_zero(t));
    const Int sign = on[bit] ? -1 : 1;
    on[bit] = !on[bit];
    for (std::size_t i = 0; i < n; ++i) acc[i] += sign * gens[bit][i];
    out.push_back(acc);
  }
  std::sort(out.begin(), out.end());
  return out;
}

IntegerLattice construction_d(const CodeChain& chain) {
  const std::vector<Point> pts = construction_d_points(chain);
  const IntegerLattice lat = hnf_periodic(pts, chain.length(), chain.modulus());
  // det * 2^(sum k_i) == 2^(Ln)
  if (lat.points_per_period(chain.modulus()) != BigInt(pts.size())) {
    throw ConsistencyFailure("Construction D determinant identity violated");
  }
  return lat;
}

DirectLatticeTest is_lattice_direct(const CodeChain& chain) {
  const ResidueSet res = residues(chain);
  const auto n = static_cast<std::size_t>(chain.length());
  const Int m = chain.modulus();
  Point sum(n);
  auto sum_inside = [&](std::span<const Int> a, std::span<const Int> b) {
    for (std::size_t i = 0; i < n; ++i) sum[i] = (a[i] + b[i]) % m;
    return contains(chain, sum);
  };

  // When every code has the zero word, the single-level points 2^lv c lie in
  // the residue set and generate it; a finite set closed under adding a
  // generating subset is a group.
  bool zero_everywhere = true;
  for (const auto& c : chain.codes()) zero_everywhere = zero_everywhere && c.contains_mask(0);
  if (zero_everywhere) {
    bool closed = true;
    Point g(n);
    for (int lv = 0; lv < chain.levels() && closed; ++lv) {
      for (const auto& w : chain.code(lv).words()) {
        for (std::size_t i = 0; i < n; ++i) g[i] = w[static_cast<int>(i)] ? (Int{1} << lv) : 0;
        for (std::size_t r = 0; r < res.size() && closed; ++r) closed = sum_inside(res[r], g);
        if (!closed) break;
      }
    }
    if (closed) return {true, std::nullopt};
  }

  for (std::size_t i = 0; i < res.size(); ++i) {
    for (std::size_t j = i; j < res.size(); ++j) {
      if (!sum_inside(res[i], res[j])) return {false, std::make_pair(res.point(i), res.point(j))};
    }
  }
  if (zero_everywhere) throw ConsistencyFailure("generator closure failed but every residue pair closes");
  return {true, std::nullopt};
}

Theorem1Report theorem1_report(const CodeChain& chain) {
  if (!chain.all_linear()) throw HypothesisViolated("the four-way lattice report needs linear codes");
  Theorem1Report rep;
  const ResidueSet res = residues(chain);
  rep.residue_count = res.size();
  rep.nested = chain.nested();

  rep.direct = is_lattice_direct(chain);
  rep.is_lattice = rep.direct.is_lattice;

  const IntegerLattice lambda_c = smallest_lattice(chain);
  rep.det_lambda_c = lambda_c.determinant();
  rep.equals_lambda_c = lambda_c.points_per_period(chain.modulus()) == BigInt(res.size());

  // Without nesting there is no Lambda_D and the Schur criterion does not
  // apply; both statements are then false, as is lattice-ness itself
  // (2c in Gamma_C for c in C_i forces c into C_(i+1)).
  if (!rep.nested) return rep;

  rep.schur = schur_closed_chain(chain);
  rep.schur_closed = rep.schur.closed;

  const IntegerLattice lambda_d = construction_d(chain);
  rep.det_lambda_d = lambda_d.determinant();
  bool equal = lambda_d.points_per_period(chain.modulus()) == BigInt(res.size());
  for (std::size_t i = 0; i < res.size() && equal; ++i) equal = lambda_d.contains(res[i]);
  rep.equals_lambda_d = equal;
  return rep;
}

}  // namespace ccc
