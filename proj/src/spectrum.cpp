#include "ccc/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ccc/constellation.hpp"
#include "ccc/error.hpp"
#include "ccc/parallel.hpp"

namespace ccc {

namespace {

constexpr std::uint64_t kMaxEnumerated = 100'000'000;
constexpr Int kDenseRadius = Int{1} << 22;
constexpr std::size_t kMaxSeriesEntries = std::size_t{1} << 22;

Int isqrt(Int x) {
  if (x < 0) return -1;
  auto r = static_cast<Int>(std::sqrt(static_cast<double>(x)));
  while (r * r > x) --r;
  while ((r + 1) * (r + 1) <= x) ++r;
  return r;
}

// Squared-distance histogram, dense for moderate radii.
class Histogram {
 public:
  explicit Histogram(Int r2max) : dense_(r2max <= kDenseRadius) {
    if (dense_) bins_.assign(static_cast<std::size_t>(r2max) + 1, 0);
  }
  void bump(Int d2, std::uint64_t k = 1) {
    if (dense_) {
      bins_[static_cast<std::size_t>(d2)] += k;
    } else {
      sparse_[d2] += k;
    }
  }
  std::map<Int, std::uint64_t> finish() const {
    if (!dense_) return sparse_;
    std::map<Int, std::uint64_t> out;
    for (std::size_t d2 = 1; d2 < bins_.size(); ++d2) {
      if (bins_[d2] != 0) out.emplace(static_cast<Int>(d2), bins_[d2]);
    }
    return out;
  }

 private:
  bool dense_;
  std::vector<std::uint64_t> bins_;
  std::map<Int, std::uint64_t> sparse_;
};

void check_center(const CodeChain& chain, std::span<const Int> c, Int r2max) {
  if (r2max < 1) throw Error("r2max must be at least 1");
  if (!contains(chain, c)) throw NotAMember("spectrum center is not a member of the constellation");
}

// Enumerates offset_i + m z_i with sum of squares <= r2max.
class BallWalker {
 public:
  BallWalker(Int m, Int r2max, Histogram& hist) : m_(m), r2max_(r2max), hist_(hist) {}

  void walk(std::span<const Int> offset) {
    offset_ = offset;
    step(0, 0);
  }

 private:
  void step(std::size_t i, Int used) {
    if (i == offset_.size()) {
      if (used > 0) hist_.bump(used);
      if (++visited_ > kMaxEnumerated) throw GuardExceeded("spectrum enumeration exceeds 10^8 points");
      return;
    }
    const Int r = isqrt(r2max_ - used);
    const Int off = offset_[i];
    const Int zlo = -div_floor(r + off, m_);
    const Int zhi = div_floor(r - off, m_);
    for (Int z = zlo; z <= zhi; ++z) {
      const Int u = off + m_ * z;
      step(i + 1, used + u * u);
    }
  }

  Int m_;
  Int r2max_;
  Histogram& hist_;
  std::span<const Int> offset_;
  std::uint64_t visited_ = 0;
};

// Distance series per difference class delta in (Z/m)^n:
// F_delta(d2) = #{v in delta + m Z^n : |v|^2 = d2}, truncated at r2max.
class ClassSeries {
 public:
  static bool fits(int n, int levels, Int r2max) {
    if (n * levels > 20) return false;
    const std::size_t classes = std::size_t{1} << (n * levels);
    return classes * static_cast<std::size_t>(r2max + 1) <= kMaxSeriesEntries;
  }

  ClassSeries(int n, Int m, Int r2max) : n_(n), m_(m) {
    const auto R = static_cast<std::size_t>(r2max);
    std::vector<std::vector<Int>> squares(static_cast<std::size_t>(m));
    const Int r = isqrt(r2max);
    for (Int v = -r; v <= r; ++v) squares[static_cast<std::size_t>(mod_floor(v, m))].push_back(v * v);

    std::vector<std::uint64_t> table(R + 1, 0);
    table[0] = 1;
    std::size_t classes = 1;
    for (int k = 0; k < n; ++k) {
      std::vector<std::uint64_t> next(classes * static_cast<std::size_t>(m) * (R + 1), 0);
      for (std::size_t p = 0; p < classes; ++p) {
        const std::uint64_t* src = table.data() + p * (R + 1);
        for (std::size_t res = 0; res < static_cast<std::size_t>(m); ++res) {
          std::uint64_t* dst = next.data() + (p + res * classes) * (R + 1);
          for (std::size_t d2 = 0; d2 <= R; ++d2) {
            if (src[d2] == 0) continue;
            for (Int sq : squares[res]) {
              const std::size_t t = d2 + static_cast<std::size_t>(sq);
              if (t <= R) dst[t] += src[d2];
            }
          }
        }
      }
      table = std::move(next);
      classes *= static_cast<std::size_t>(m);
    }

    offsets_.assign(classes + 1, 0);
    for (std::size_t c = 0; c < classes; ++c) {
      const std::uint64_t* row = table.data() + c * (R + 1);
      for (std::size_t d2 = 0; d2 <= R; ++d2) {
        if (row[d2] != 0) entries_.push_back({static_cast<Int>(d2), row[d2]});
      }
      offsets_[c + 1] = entries_.size();
    }
  }

  std::size_t index(std::span<const Int> s, std::span<const Int> c) const {
    std::size_t idx = 0, scale = 1;
    for (int i = 0; i < n_; ++i) {
      const auto k = static_cast<std::size_t>(i);
      idx += static_cast<std::size_t>(mod_floor(s[k] - c[k], m_)) * scale;
      scale *= static_cast<std::size_t>(m_);
    }
    return idx;
  }

  void accumulate(std::size_t cls, std::vector<std::uint64_t>& acc) const {
    for (std::size_t e = offsets_[cls]; e < offsets_[cls + 1]; ++e) {
      acc[static_cast<std::size_t>(entries_[e].d2)] += entries_[e].count;
    }
  }

 private:
  struct Entry {
    Int d2;
    std::uint64_t count;
  };
  int n_;
  Int m_;
  std::vector<std::size_t> offsets_;
  std::vector<Entry> entries_;
};

}  // namespace

std::uint64_t SpectrumTable::total() const {
  std::uint64_t t = 0;
  for (const auto& [d2, k] : counts) t += k;
  return t;
}

bool cw_equidistant(std::span<const Int> a, std::span<const Int> b) {
  if (a.size() != b.size()) throw LengthMismatch("vectors have different lengths");
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a[i]) != std::abs(b[i])) return false;
  }
  return true;
}

SpectrumTable spectrum_at(const CodeChain& chain, std::span<const Int> c, Int r2max) {
  check_center(chain, c, r2max);
  const ResidueSet res = residues(chain);
  Histogram hist(r2max);
  BallWalker walker(chain.modulus(), r2max, hist);
  Point offset(c.size());
  for (std::size_t r = 0; r < res.size(); ++r) {
    const auto s = res[r];
    for (std::size_t i = 0; i < c.size(); ++i) offset[i] = s[i] - c[i];
    walker.walk(offset);
  }
  return SpectrumTable{Point(c.begin(), c.end()), r2max, hist.finish()};
}

std::vector<SpectrumTable> residue_spectra(const CodeChain& chain, Int r2max, unsigned threads) {
  if (r2max < 1) throw Error("r2max must be at least 1");
  const ResidueSet res = residues(chain);
  std::vector<SpectrumTable> tables(res.size());

  if (!ClassSeries::fits(chain.length(), chain.levels(), r2max)) {
    parallel_for(res.size(), threads, [&](std::size_t i) { tables[i] = spectrum_at(chain, res[i], r2max); });
    return tables;
  }

  const ClassSeries series(chain.length(), chain.modulus(), r2max);
  parallel_for(res.size(), threads, [&](std::size_t ci) {
    const auto c = res[ci];
    std::vector<std::uint64_t> acc(static_cast<std::size_t>(r2max) + 1, 0);
    for (std::size_t si = 0; si < res.size(); ++si) series.accumulate(series.index(res[si], c), acc);
    SpectrumTable t{Point(c.begin(), c.end()), r2max, {}};
    for (std::size_t d2 = 1; d2 < acc.size(); ++d2) {
      if (acc[d2] != 0) t.counts.emplace(static_cast<Int>(d2), acc[d2]);
    }
    tables[ci] = std::move(t);
  });
  return tables;
}

Int default_r2max(const CodeChain& chain) { return 4 * chain.modulus() * chain.modulus(); }

EdsResult eds_check(const CodeChain& chain, Int r2max, unsigned threads) {
  std::vector<SpectrumTable> tables = residue_spectra(chain, r2max, threads);
  EdsResult out;
  out.reference = tables.front();
  const auto& ref = tables.front().counts;
  for (std::size_t i = 1; i < tables.size(); ++i) {
    const auto& cur = tables[i].counts;
    if (cur == ref) continue;
    // Smallest key where the two tables disagree.
    Int d2 = r2max + 1;
    for (const auto& [k, v] : ref) {
      if (tables[i].at(k) != v) {
        d2 = std::min(d2, k);
        break;
      }
    }
    for (const auto& [k, v] : cur) {
      if (tables.front().at(k) != v) {
        d2 = std::min(d2, k);
        break;
      }
    }
    out.equal = false;
    out.witness = EdsWitness{tables.front().center, tables[i].center, d2, tables.front().at(d2), tables[i].at(d2)};
    return out;
  }
  out.equal = true;
  return out;
}

KissingStats kissing_stats(const CodeChain& chain, unsigned threads) {
  // Every point has its own translates at squared distance (2^L)^2, so a ball
  // of that radius always contains the nearest neighbours.
  const Int r2 = chain.modulus() * chain.modulus();
  const std::vector<SpectrumTable> tables = residue_spectra(chain, r2, threads);
  KissingStats ks;
  ks.d2min = r2;
  for (const auto& t : tables) ks.d2min = std::min(ks.d2min, *t.min_distance2());
  for (const auto& t : tables) ks.kissing_values.insert(t.at(ks.d2min));
  return ks;
}

std::vector<Point> cw_candidates(std::span<const Int> base, std::span<const Int> e) {
  if (base.size() != e.size()) throw LengthMismatch("base and error vector lengths differ");
  std::vector<std::size_t> free;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] != 0) free.push_back(i);
  }
  if (free.size() > 24) throw GuardExceeded("more than 2^24 sign patterns");
  std::vector<Point> out;
  out.reserve(std::size_t{1} << free.size());
  for (std::size_t pattern = 0; pattern < (std::size_t{1} << free.size()); ++pattern) {
    Point p(base.begin(), base.end());
    for (std::size_t k = 0; k < free.size(); ++k) {
      const Int mag = std::abs(e[free[k]]);
      p[free[k]] += ((pattern >> k) & 1u) ? -mag : mag;
    }
    out.push_back(std::move(p));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t cw_count(const CodeChain& chain, std::span<const Int> x, std::span<const Int> e) {
  if (!contains(chain, x)) throw NotAMember("x is not a member of the constellation");
  std::uint64_t k = 0;
  for (const auto& y : cw_candidates(x, e)) {
    if (contains(chain, y)) ++k;
  }
  return k;
}

}  // namespace ccc
