#include "ccc/constellation.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "ccc/error.hpp"

namespace ccc {

namespace {

constexpr std::size_t kMaxBoxPoints = 10'000'000;

bool span_less(std::span<const Int> a, std::span<const Int> b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

ResidueSet::ResidueSet(int n, Int modulus, std::vector<Int> flat)
    : n_(n), modulus_(modulus), coords_(std::move(flat)) {}

std::vector<Point> ResidueSet::points() const {
  std::vector<Point> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) out.push_back(point(i));
  return out;
}

bool ResidueSet::contains_reduced(std::span<const Int> p) const {
  std::size_t lo = 0, hi = size();
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (span_less((*this)[mid], p)) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  return lo < size() && std::equal(p.begin(), p.end(), (*this)[lo].begin());
}

ResidueSet residues(const CodeChain& chain) {
  const std::uint64_t count = chain.residue_count();
  if (count > ResidueSet::kMaxResidues) {
    throw GuardExceeded("residue count " + std::to_string(count) + " exceeds 2^22");
  }
  const int n = chain.length();
  const int levels = chain.levels();
  const auto un = static_cast<std::size_t>(n);

  std::vector<Int> raw(static_cast<std::size_t>(count) * un, 0);
  // Mixed-radix counter over (word index at level 0, ..., level L-1).
  std::vector<std::size_t> idx(static_cast<std::size_t>(levels), 0);
  for (std::size_t r = 0; r < count; ++r) {
    Int* out = raw.data() + r * un;
    for (int lv = 0; lv < levels; ++lv) {
      const BitWord& w = chain.code(lv).words()[idx[static_cast<std::size_t>(lv)]];
      const Int weight = Int{1} << lv;
      for (int i = 0; i < n; ++i) {
        if (w[i]) out[i] += weight;
      }
    }
    for (int lv = levels - 1; lv >= 0; --lv) {
      auto& k = idx[static_cast<std::size_t>(lv)];
      if (++k < chain.code(lv).size()) break;
      k = 0;
    }
  }

  std::vector<std::size_t> order(static_cast<std::size_t>(count));
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return span_less({raw.data() + a * un, un}, {raw.data() + b * un, un});
  });
  std::vector<Int> sorted(raw.size());
  for (std::size_t r = 0; r < order.size(); ++r) {
    std::copy_n(raw.data() + order[r] * un, un, sorted.data() + r * un);
  }
  return ResidueSet(n, chain.modulus(), std::move(sorted));
}

bool contains(const CodeChain& chain, std::span<const Int> p) {
  const int n = chain.length();
  if (static_cast<int>(p.size()) != n) throw LengthMismatch("point length does not match chain length");
  const Int m = chain.modulus();
  // Assemble the digit words of every level in one pass over the coordinates.
  std::uint32_t digit[CodeChain::kMaxLevels] = {};
  const int levels = chain.levels();
  for (int i = 0; i < n; ++i) {
    const auto r = static_cast<std::uint32_t>(mod_floor(p[static_cast<std::size_t>(i)], m));
    for (int lv = 0; lv < levels; ++lv) digit[lv] = (digit[lv] << 1) | ((r >> lv) & 1u);
  }
  for (int lv = 0; lv < levels; ++lv) {
    if (!chain.code(lv).contains_mask(digit[lv])) return false;
  }
  return true;
}

Decomposition decompose(const CodeChain& chain, std::span<const Int> p) {
  if (!contains(chain, p)) throw NotAMember("point is not a member of the constellation");
  const int n = chain.length();
  const Int m = chain.modulus();
  Decomposition d;
  d.z.resize(static_cast<std::size_t>(n));
  std::vector<std::uint32_t> masks(static_cast<std::size_t>(chain.levels()), 0);
  for (int i = 0; i < n; ++i) {
    const Int v = p[static_cast<std::size_t>(i)];
    const auto r = static_cast<std::uint32_t>(mod_floor(v, m));
    d.z[static_cast<std::size_t>(i)] = div_floor(v, m);
    for (std::size_t lv = 0; lv < masks.size(); ++lv) masks[lv] = (masks[lv] << 1) | ((r >> lv) & 1u);
  }
  for (auto mask : masks) d.digits.emplace_back(n, mask);
  return d;
}

Point recompose(const CodeChain& chain, const Decomposition& d) {
  const int n = chain.length();
  if (static_cast<int>(d.digits.size()) != chain.levels() || static_cast<int>(d.z.size()) != n) {
    throw LengthMismatch("decomposition shape does not match chain");
  }
  Point p(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    Int v = chain.modulus() * d.z[static_cast<std::size_t>(i)];
    for (std::size_t lv = 0; lv < d.digits.size(); ++lv) {
      if (d.digits[lv][i]) v += Int{1} << lv;
    }
    p[static_cast<std::size_t>(i)] = v;
  }
  return p;
}

std::vector<Point> points_in_box(const CodeChain& chain, std::span<const Int> lo,
                                 std::span<const Int> hi) {
  const int n = chain.length();
  if (static_cast<int>(lo.size()) != n || static_cast<int>(hi.size()) != n) {
    throw LengthMismatch("box corners must have the chain's length");
  }
  for (int i = 0; i < n; ++i) {
    if (lo[static_cast<std::size_t>(i)] > hi[static_cast<std::size_t>(i)]) {
      throw Error("degenerate box: lo > hi in coordinate " + std::to_string(i));
    }
  }
  const Int m = chain.modulus();
  const ResidueSet res = residues(chain);
  const auto un = static_cast<std::size_t>(n);

  std::vector<Point> out;
  std::vector<Int> zlo(un), zhi(un);
  Point p(un);
  for (std::size_t r = 0; r < res.size(); ++r) {
    const auto s = res[r];
    bool empty = false;
    for (std::size_t i = 0; i < un; ++i) {
      // s_i + m z_i in [lo_i, hi_i]
      zlo[i] = -div_floor(s[i] - lo[i], m);
      zhi[i] = div_floor(hi[i] - s[i], m);
      if (zlo[i] > zhi[i]) empty = true;
    }
    if (empty) continue;
    std::vector<Int> z(zlo);
    while (true) {
      for (std::size_t i = 0; i < un; ++i) p[i] = s[i] + m * z[i];
      out.push_back(p);
      if (out.size() > kMaxBoxPoints) throw GuardExceeded("box holds more than 10^7 points");
      std::size_t i = un;
      while (i > 0) {
        --i;
        if (++z[i] <= zhi[i]) break;
        z[i] = zlo[i];
        if (i == 0) {
          i = un + 1;
          break;
        }
      }
      if (i == un + 1) break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace ccc
