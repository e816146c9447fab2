#include "ccc/uniformity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "ccc/constellation.hpp"
#include "ccc/error.hpp"
#include "ccc/parallel.hpp"

namespace ccc {

namespace {

constexpr int kMaxSearchLength = 6;
constexpr std::uint64_t kMaxShellPoints = 100'000'000;

void require_two_level_linear(const CodeChain& chain) {
  if (chain.levels() != 2) throw HypothesisViolated("this operation needs exactly two levels");
  if (!chain.all_linear()) throw HypothesisViolated("this operation needs linear codes");
}

void require_member(const CodeChain& chain, std::span<const Int> p, const char* name) {
  if (!contains(chain, p)) throw NotAMember(std::string(name) + " is not a member of the constellation");
}

// Every residue maps into Gamma_C under y -> f(y) (reduced mod m).
template <class Map>
bool maps_residues_inside(const CodeChain& chain, const ResidueSet& res, Map&& f) {
  Point img;
  for (std::size_t r = 0; r < res.size(); ++r) {
    img = f(res[r]);
    if (!contains(chain, img)) return false;
  }
  return true;
}

}  // namespace

Point ReflectionMap::apply(std::span<const Int> v) const {
  if (v.size() != signs.size()) throw LengthMismatch("vector length does not match reflection");
  Point out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = signs[i] * v[i];
  return out;
}

ReflectionMap reflection_for(const CodeChain& chain, std::span<const Int> x) {
  if (chain.levels() != 2) throw HypothesisViolated("reflection maps are defined for two levels");
  const Decomposition d = decompose(chain, x);
  ReflectionMap t;
  for (int i = 0; i < chain.length(); ++i) t.signs.push_back(d.digits[0][i] ? -1 : 1);
  return t;
}

ReflectedDifference reflected_difference(const CodeChain& chain, std::span<const Int> x,
                                         std::span<const Int> y) {
  require_two_level_linear(chain);
  const Decomposition dx = decompose(chain, x);
  const Decomposition dy = decompose(chain, y);
  const int n = chain.length();
  const Point image = reflection_for(chain, x).apply(sub(y, x));

  ReflectedDifference out;
  out.zprime.resize(static_cast<std::size_t>(n));
  std::vector<int> d1(static_cast<std::size_t>(n)), d2(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    const int c1 = dx.digits[0][i], c2 = dx.digits[1][i];
    const int t1 = dy.digits[0][i], t2 = dy.digits[1][i];
    const Int dz = dy.z[k] - dx.z[k];
    const int step2 = t2 - c2;
    d1[k] = (t1 - c1) & 1;
    d2[k] = step2 & 1;
    if (c1 == 0) {
      out.zprime[k] = step2 >= 0 ? dz : dz - 1;
    } else {
      out.zprime[k] = step2 <= 0 ? -dz : -dz - 1;
    }
    if (image[k] != d1[k] + 2 * d2[k] + 4 * out.zprime[k]) {
      throw ConsistencyFailure("reflected difference does not recompose at coordinate " + std::to_string(i));
    }
  }
  out.d1 = BitWord::from_bits(d1);
  out.d2 = BitWord::from_bits(d2);
  if (!chain.code(0).contains(out.d1) || !chain.code(1).contains(out.d2)) {
    throw ConsistencyFailure("reflected difference digits are not codewords");
  }
  return out;
}

GuTwoLevelResult gu_check_two_level(const CodeChain& chain, unsigned threads) {
  require_two_level_linear(chain);
  const ResidueSet res = residues(chain);
  const auto n = static_cast<std::size_t>(chain.length());
  std::vector<std::optional<ReflectionMap>> found(res.size());

  // T maps 4Z^n onto itself, so T(Gamma - x) == Gamma reduces to the residues.
  parallel_for(res.size(), threads, [&](std::size_t xi) {
    const auto x = res[xi];
    ReflectionMap t = reflection_for(chain, x);
    Point img(n);
    const bool ok = maps_residues_inside(chain, res, [&](std::span<const Int> s) -> const Point& {
      for (std::size_t i = 0; i < n; ++i) img[i] = t.signs[i] * (s[i] - x[i]);
      return img;
    });
    if (ok) found[xi] = std::move(t);
  });

  GuTwoLevelResult out;
  out.uniform = true;
  for (std::size_t xi = 0; xi < res.size(); ++xi) {
    if (!found[xi]) {
      out.uniform = false;
      out.failing_residue = res.point(xi);
      out.certificates.clear();
      return out;
    }
    out.certificates.push_back({res.point(xi), *found[xi]});
  }
  return out;
}

Point IsometryCandidate::apply(std::span<const Int> y) const {
  if (y.size() != signs.size()) throw LengthMismatch("vector length does not match isometry");
  Point out(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    const auto src = static_cast<std::size_t>(permutation[i]);
    out[i] = signs[i] * (y[src] + translation[src]);
  }
  return out;
}

const char* to_string(GuVerdict v) {
  switch (v) {
    case GuVerdict::certified:
      return "certified";
    case GuVerdict::refuted_by_eds:
      return "refuted_by_eds";
    case GuVerdict::inconclusive:
      return "inconclusive";
  }
  return "unknown";
}

GuSearchResult gu_subgroup_search(const CodeChain& chain, Int r2max, unsigned threads) {
  const int n = chain.length();
  if (n > kMaxSearchLength) {
    throw GuardExceeded("signed-permutation search is limited to n <= " + std::to_string(kMaxSearchLength));
  }
  GuSearchResult out;
  const EdsResult eds = eds_check(chain, r2max, threads);
  if (!eds.equal) {
    out.verdict = GuVerdict::refuted_by_eds;
    out.eds_witness = eds.witness;
    return out;
  }

  const ResidueSet res = residues(chain);
  const auto un = static_cast<std::size_t>(n);
  std::vector<std::optional<IsometryCandidate>> found(res.size());
  parallel_for(res.size(), threads, [&](std::size_t xi) {
    const auto x = res[xi];
    IsometryCandidate cand;
    cand.permutation.resize(un);
    std::iota(cand.permutation.begin(), cand.permutation.end(), 0);
    cand.signs.assign(un, 1);
    cand.translation.resize(un);
    for (std::size_t i = 0; i < un; ++i) cand.translation[i] = -x[i];
    Point img(un);
    do {
      for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        for (std::size_t i = 0; i < un; ++i) cand.signs[i] = ((mask >> i) & 1u) ? -1 : 1;
        const bool ok = maps_residues_inside(chain, res, [&](std::span<const Int> s) -> const Point& {
          for (std::size_t i = 0; i < un; ++i) {
            const auto src = static_cast<std::size_t>(cand.permutation[i]);
            img[i] = cand.signs[i] * (s[src] - x[src]);
          }
          return img;
        });
        if (ok) {
          found[xi] = cand;
          return;
        }
      }
    } while (std::next_permutation(cand.permutation.begin(), cand.permutation.end()));
  });

  for (std::size_t xi = 0; xi < res.size(); ++xi) {
    if (!found[xi]) {
      out.verdict = GuVerdict::inconclusive;
      out.unresolved = res.point(xi);
      out.isometries.clear();
      return out;
    }
    out.isometries.emplace_back(res.point(xi), *found[xi]);
  }
  out.verdict = GuVerdict::certified;
  return out;
}

PartnerTrace partner_lemma1(const CodeChain& chain, std::span<const Int> x, std::span<const Int> y,
                            std::span<const Int> xp) {
  require_two_level_linear(chain);
  require_member(chain, x, "x");
  require_member(chain, y, "y");
  require_member(chain, xp, "x'");
  const Decomposition dx = decompose(chain, x);
  const Decomposition dy = decompose(chain, y);
  const Decomposition dp = decompose(chain, xp);
  const int n = chain.length();
  const auto un = static_cast<std::size_t>(n);

  // c'' = (c~ - c + c') mod 2 per level; a codeword by linearity.
  const BitWord c1pp = xor_add(xor_add(dy.digits[0], dx.digits[0]), dp.digits[0]);
  const BitWord c2pp = xor_add(xor_add(dy.digits[1], dx.digits[1]), dp.digits[1]);

  PartnerTrace tr;
  for (auto* v : {&tr.e1, &tr.e2, &tr.e1p, &tr.e2p, &tr.delta, &tr.zbar, &tr.yprime}) v->assign(un, 0);
  tr.cases.assign(un, 0);
  tr.orientation.assign(un, 1);

  for (std::size_t k = 0; k < un; ++k) {
    const int i = static_cast<int>(k);
    const Int e1 = Int{dy.digits[0][i]} - Int{dx.digits[0][i]};
    const Int e2 = Int{dy.digits[1][i]} - Int{dx.digits[1][i]};
    const Int e1p = Int{c1pp[i]} - Int{dp.digits[0][i]};
    const Int e2p = Int{c2pp[i]} - Int{dp.digits[1][i]};

    Int delta = 0;
    int rule = 0;
    if (e1 == 0 || e2 == 0) {
      rule = 1;
    } else if (e1 * e2 == e1p * e2p) {
      rule = 2;
    } else if (e1p == e2p) {
      rule = 3;
      delta = -e1p;
    } else {
      rule = 4;
      delta = e1p;
    }

    // The digit part of y' - x' lands on +-(e1 + 2 e2); the carry term
    // z~ - z has to follow the same sign for the coordinate distances to match.
    const Int digit_part = e1 + 2 * e2;
    const Int moved_part = e1p + 2 * e2p + 4 * delta;
    int orientation = 0;
    if (moved_part == digit_part) {
      orientation = 1;
    } else if (moved_part == -digit_part) {
      orientation = -1;
    } else {
      throw ConsistencyFailure("partner digit residue is not +-(e1 + 2 e2) at coordinate " + std::to_string(i));
    }

    tr.e1[k] = e1;
    tr.e2[k] = e2;
    tr.e1p[k] = e1p;
    tr.e2p[k] = e2p;
    tr.delta[k] = delta;
    tr.cases[k] = rule;
    tr.orientation[k] = orientation;
    tr.zbar[k] = dp.z[k] + orientation * (dy.z[k] - dx.z[k]) + delta;
    tr.yprime[k] = Int{c1pp[i]} + 2 * Int{c2pp[i]} + 4 * tr.zbar[k];
  }

  if (!cw_equidistant(sub(tr.yprime, xp), sub(y, x))) {
    throw ConsistencyFailure("constructed partner is not coordinate-wise equi-distant");
  }
  if (!contains(chain, tr.yprime)) throw ConsistencyFailure("constructed partner is not a member");
  return tr;
}

std::optional<Point> partner_bruteforce(const CodeChain& chain, std::span<const Int> x,
                                        std::span<const Int> y, std::span<const Int> xp) {
  require_member(chain, x, "x");
  require_member(chain, y, "y");
  require_member(chain, xp, "x'");
  for (auto& cand : cw_candidates(xp, sub(y, x))) {
    if (contains(chain, cand)) return std::move(cand);
  }
  return std::nullopt;
}

std::vector<Point> euclidean_partners(const CodeChain& chain, std::span<const Int> x,
                                      std::span<const Int> y, std::span<const Int> xp) {
  require_member(chain, x, "x");
  require_member(chain, y, "y");
  require_member(chain, xp, "x'");
  const Point diff = sub(y, x);
  const Int target = norm2(diff);
  const Int m = chain.modulus();
  const std::size_t n = xp.size();
  const ResidueSet res = residues(chain);

  std::vector<Point> out;
  Point offset(n), cur(n);
  std::uint64_t visited = 0;
  // Depth-first over coordinates, keeping the partial squared length <= target.
  auto walk = [&](auto&& self, std::size_t i, Int used) -> void {
    if (i == n) {
      if (++visited > kMaxShellPoints) throw GuardExceeded("shell enumeration exceeds 10^8 points");
      if (used == target) out.push_back(add(cur, xp));
      return;
    }
    const auto r = static_cast<Int>(std::floor(std::sqrt(static_cast<double>(target - used)))) + 1;
    const Int zlo = -div_floor(r + offset[i], m);
    const Int zhi = div_floor(r - offset[i], m);
    for (Int z = zlo; z <= zhi; ++z) {
      const Int u = offset[i] + m * z;
      if (used + u * u > target) continue;
      cur[i] = u;
      self(self, i + 1, used + u * u);
    }
  };
  for (std::size_t r = 0; r < res.size(); ++r) {
    for (std::size_t i = 0; i < n; ++i) offset[i] = mod_floor(res[r][i] - xp[i], m);
    walk(walk, 0, 0);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<Point> euclidean_partner_bruteforce(const CodeChain& chain, std::span<const Int> x,
                                                  std::span<const Int> y, std::span<const Int> xp) {
  auto all = euclidean_partners(chain, x, y, xp);
  if (all.empty()) return std::nullopt;
  return std::move(all.front());
}

}  // namespace ccc
