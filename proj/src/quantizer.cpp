#include "ccc/quantizer.hpp"

#include <cmath>
#include <string>

#include "ccc/constellation.hpp"
#include "ccc/error.hpp"
#include "ccc/parallel.hpp"

namespace ccc {

namespace {

constexpr std::uint64_t kMinSamples = 1000;
constexpr std::uint64_t kSampleBlock = 4096;
constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

std::uint64_t splitmix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Nearest point of s + m Z^n with halves rounded down; returns its squared distance.
double round_in_class(std::span<const Int> s, Int m, std::span<const double> w, Int* out) {
  const double md = static_cast<double>(m);
  double d2 = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double s_i = static_cast<double>(s[i]);
    const double z = std::ceil((w[i] - s_i) / md - 0.5);
    out[i] = s[i] + m * static_cast<Int>(z);
    const double e = w[i] - static_cast<double>(out[i]);
    d2 += e * e;
  }
  return d2;
}

class Decoder {
 public:
  explicit Decoder(const CodeChain& chain) : res_(residues(chain)), m_(chain.modulus()) {}

  // Squared distance from w to Gamma_C; best receives the winning point.
  double decode(std::span<const double> w, Point& best, Point& scratch) const {
    double best_d2 = round_in_class(res_[0], m_, w, best.data());
    for (std::size_t r = 1; r < res_.size(); ++r) {
      const double d2 = round_in_class(res_[r], m_, w, scratch.data());
      if (d2 < best_d2 || (d2 == best_d2 && scratch < best)) {
        best_d2 = d2;
        best.swap(scratch);
      }
    }
    return best_d2;
  }

  std::size_t residue_count() const { return res_.size(); }

 private:
  ResidueSet res_;
  Int m_;
};

struct Partial {
  double sum = 0.0;
  double sum_sq = 0.0;
};

// Pairwise merge in index order.
Partial merge(const std::vector<Partial>& parts, std::size_t lo, std::size_t hi) {
  if (hi - lo == 1) return parts[lo];
  const std::size_t mid = lo + (hi - lo) / 2;
  const Partial a = merge(parts, lo, mid);
  const Partial b = merge(parts, mid, hi);
  return {a.sum + b.sum, a.sum_sq + b.sum_sq};
}

}  // namespace

Point nearest(const CodeChain& chain, std::span<const double> w) {
  if (static_cast<int>(w.size()) != chain.length()) {
    throw LengthMismatch("w has length " + std::to_string(w.size()) + ", expected " +
                         std::to_string(chain.length()));
  }
  for (double v : w) {
    if (!std::isfinite(v)) throw Error("w must be finite");
  }
  const Decoder dec(chain);
  Point best(w.size()), scratch(w.size());
  dec.decode(w, best, scratch);
  return best;
}

NsmEstimate nsm_estimate(const CodeChain& chain, std::uint64_t samples, std::uint64_t seed, unsigned threads) {
  if (samples < kMinSamples) throw GuardExceeded("nsm needs at least 1000 samples");
  const Decoder dec(chain);
  const int n = chain.length();
  const auto un = static_cast<std::size_t>(n);
  const Int m = chain.modulus();
  const double md = static_cast<double>(m);

  NsmEstimate est;
  est.samples = samples;
  est.seed = seed;
  est.covolume_num = BigInt(1) << (chain.levels() * n);
  est.covolume_den = BigInt(dec.residue_count());
  const BigInt g = boost::multiprecision::gcd(est.covolume_num, est.covolume_den);
  est.covolume_num /= g;
  est.covolume_den /= g;
  const double log_v =
      chain.levels() * n * std::log(2.0) - std::log(static_cast<double>(dec.residue_count()));
  est.covolume = std::exp(log_v);
  const double scale = 1.0 / (n * std::exp(2.0 * log_v / n));

  const std::uint64_t base = splitmix(seed + kGolden);
  const std::size_t blocks = static_cast<std::size_t>((samples + kSampleBlock - 1) / kSampleBlock);
  std::vector<Partial> parts(blocks);
  parallel_for(blocks, threads, [&](std::size_t b) {
    std::vector<double> w(un);
    Point best(un), scratch(un);
    Partial p;
    const std::uint64_t first = b * kSampleBlock;
    const std::uint64_t last = std::min<std::uint64_t>(samples, first + kSampleBlock);
    for (std::uint64_t k = first; k < last; ++k) {
      for (std::size_t i = 0; i < un; ++i) {
        const std::uint64_t counter = k * un + i + 1;
        const std::uint64_t bits = splitmix(base + counter * kGolden);
        w[i] = md * (static_cast<double>(bits >> 11) * 0x1.0p-53);
      }
      const double g_k = dec.decode(w, best, scratch) * scale;
      p.sum += g_k;
      p.sum_sq += g_k * g_k;
    }
    parts[b] = p;
  });

  const Partial total = merge(parts, 0, parts.size());
  const auto N = static_cast<double>(samples);
  est.value = total.sum / N;
  const double var = std::max(0.0, (total.sum_sq - N * est.value * est.value) / (N - 1.0));
  est.std_error = std::sqrt(var / N);
  return est;
}

CodeChain dplus_chain(int n) {
  if (n < 2) throw Error("dplus needs n >= 2");
  return CodeChain({repetition_code(n), even_weight_code(n)});
}

}  // namespace ccc
