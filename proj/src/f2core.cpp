#include "ccc/f2core.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "ccc/chain.hpp"
#include "ccc/error.hpp"

namespace ccc {

namespace {

void check_length(int n) {
  if (n < 1 || n > BitWord::kMaxLength) {
    throw GuardExceeded("word length " + std::to_string(n) + " outside [1, " +
                        std::to_string(BitWord::kMaxLength) + "]");
  }
}

void check_same_length(const BitWord& a, const BitWord& b) {
  if (a.size() != b.size()) {
    throw LengthMismatch("word lengths differ: " + std::to_string(a.size()) + " vs " +
                         std::to_string(b.size()));
  }
}

std::uint32_t full_mask(int n) { return n >= 32 ? ~0u : ((1u << n) - 1u); }

}  // namespace

BitWord::BitWord(int n, std::uint32_t mask) : n_(n), mask_(mask) {
  check_length(n);
  if ((mask & ~full_mask(n)) != 0) throw Error("mask has bits beyond length " + std::to_string(n));
}

BitWord BitWord::ones(int n) {
  check_length(n);
  return BitWord(n, full_mask(n));
}

BitWord BitWord::unit(int n, int i) {
  check_length(n);
  if (i < 0 || i >= n) throw Error("unit vector index out of range");
  return BitWord(n, 1u << (n - 1 - i));
}

BitWord BitWord::from_string(std::string_view bits) {
  const int n = static_cast<int>(bits.size());
  check_length(n);
  std::uint32_t mask = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') throw Error(std::string("invalid symbol '") + c + "' in binary word");
    mask = (mask << 1) | static_cast<std::uint32_t>(c - '0');
  }
  return BitWord(n, mask);
}

BitWord BitWord::from_bits(std::span<const int> bits) {
  const int n = static_cast<int>(bits.size());
  check_length(n);
  std::uint32_t mask = 0;
  for (int b : bits) {
    if (b != 0 && b != 1) throw Error("bit value " + std::to_string(b) + " is not 0 or 1");
    mask = (mask << 1) | static_cast<std::uint32_t>(b);
  }
  return BitWord(n, mask);
}

int BitWord::weight() const { return std::popcount(mask_); }

std::vector<int> BitWord::bits() const {
  std::vector<int> out(static_cast<std::size_t>(n_));
  for (int i = 0; i < n_; ++i) out[static_cast<std::size_t>(i)] = (*this)[i] ? 1 : 0;
  return out;
}

std::string BitWord::to_string() const {
  std::string s(static_cast<std::size_t>(n_), '0');
  for (int i = 0; i < n_; ++i) {
    if ((*this)[i]) s[static_cast<std::size_t>(i)] = '1';
  }
  return s;
}

BitWord xor_add(const BitWord& a, const BitWord& b) {
  check_same_length(a, b);
  return BitWord(a.size(), a.mask() ^ b.mask());
}

BitWord schur(const BitWord& a, const BitWord& b) {
  check_same_length(a, b);
  return BitWord(a.size(), a.mask() & b.mask());
}

BinaryCode BinaryCode::from_words(int n, std::vector<BitWord> words) {
  check_length(n);
  if (words.empty()) throw Error("a code needs at least one word");
  for (const auto& w : words) {
    if (w.size() != n) {
      throw LengthMismatch("word " + w.to_string() + " does not have length " + std::to_string(n));
    }
  }
  std::sort(words.begin(), words.end());
  words.erase(std::unique(words.begin(), words.end()), words.end());
  if (words.size() > kMaxWords) throw GuardExceeded("code has more than 2^20 words");

  auto store = std::make_shared<Store>();
  store->bitmap.assign(((std::size_t{1} << n) + 63) / 64, 0);
  for (const auto& w : words) store->bitmap[w.mask() >> 6] |= std::uint64_t{1} << (w.mask() & 63u);
  store->words = std::move(words);

  BinaryCode code;
  code.n_ = n;
  code.store_ = std::move(store);
  return code;
}

bool BinaryCode::contains(const BitWord& w) const {
  if (w.size() != n_) throw LengthMismatch("word length does not match code length");
  return contains_mask(w.mask());
}

int BinaryCode::dimension() const {
  const std::size_t s = size();
  if (!std::has_single_bit(s) || !is_linear(*this)) {
    throw HypothesisViolated("dimension is only defined for linear codes");
  }
  return std::countr_zero(s);
}

bool BinaryCode::operator==(const BinaryCode& other) const {
  return n_ == other.n_ && (store_ == other.store_ || store_->words == other.store_->words);
}

BinaryCode span(int n, std::span<const BitWord> generators) {
  check_length(n);
  if (generators.size() > BinaryCode::kMaxGenerators) {
    throw GuardExceeded("more than " + std::to_string(BinaryCode::kMaxGenerators) + " generators");
  }
  for (const auto& g : generators) {
    if (g.size() != n) throw LengthMismatch("generator " + g.to_string() + " has wrong length");
  }
  // Gray-code walk over all 2^k combinations; duplicates collapse in from_words.
  std::vector<BitWord> words;
  const std::size_t k = generators.size();
  words.reserve(std::size_t{1} << k);
  std::uint32_t acc = 0;
  words.emplace_back(n, acc);
  for (std::size_t i = 1; i < (std::size_t{1} << k); ++i) {
    acc ^= generators[static_cast<std::size_t>(std::countr_zero(i))].mask();
    words.emplace_back(n, acc);
  }
  BinaryCode code = BinaryCode::from_words(n, std::move(words));
  code.generators_ = std::vector<BitWord>(generators.begin(), generators.end());
  return code;
}

int f2_rank(std::span<const BitWord> rows) {
  // Pivot table indexed by leading bit.
  std::uint32_t pivots[32] = {};
  int rank = 0;
  for (const auto& r : rows) {
    std::uint32_t v = r.mask();
    while (v != 0) {
      const int top = 31 - std::countl_zero(v);
      if (pivots[top] == 0) {
        pivots[top] = v;
        ++rank;
        break;
      }
      v ^= pivots[top];
    }
  }
  return rank;
}

bool is_linear(const BinaryCode& code) {
  if (!code.contains_mask(0)) return false;
  const auto words = code.words();
  for (std::size_t i = 0; i < words.size(); ++i) {
    for (std::size_t j = i + 1; j < words.size(); ++j) {
      if (!code.contains_mask(words[i].mask() ^ words[j].mask())) return false;
    }
  }
  return true;
}

bool is_nested(const BinaryCode& inner, const BinaryCode& outer) {
  if (inner.length() != outer.length()) throw LengthMismatch("codes have different lengths");
  return std::all_of(inner.words().begin(), inner.words().end(),
                     [&](const BitWord& w) { return outer.contains_mask(w.mask()); });
}

BinaryCode repetition_code(int n) {
  const BitWord g = BitWord::ones(n);
  return span(n, std::span<const BitWord>(&g, 1));
}

BinaryCode even_weight_code(int n) {
  std::vector<BitWord> gens;
  for (int i = 0; i + 1 < n; ++i) {
    gens.push_back(xor_add(BitWord::unit(n, i), BitWord::unit(n, i + 1)));
  }
  return span(n, gens);
}

BinaryCode full_space(int n) {
  std::vector<BitWord> gens;
  for (int i = 0; i < n; ++i) gens.push_back(BitWord::unit(n, i));
  return span(n, gens);
}

// CodeChain helpers and the chain-level Schur closure live here so that the
// binary-code layer stays self-contained.

Int norm2(std::span<const Int> v) {
  Int s = 0;
  for (Int x : v) s += x * x;
  return s;
}

Point sub(std::span<const Int> a, std::span<const Int> b) {
  if (a.size() != b.size()) throw LengthMismatch("point lengths differ");
  Point out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

Point add(std::span<const Int> a, std::span<const Int> b) {
  if (a.size() != b.size()) throw LengthMismatch("point lengths differ");
  Point out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

CodeChain::CodeChain(std::vector<BinaryCode> codes) : codes_(std::move(codes)) {
  if (codes_.empty()) throw Error("a chain needs at least one level");
  if (static_cast<int>(codes_.size()) > kMaxLevels) {
    throw GuardExceeded("more than " + std::to_string(kMaxLevels) + " levels");
  }
  n_ = codes_.front().length();
  for (const auto& c : codes_) {
    if (c.length() != n_) throw LengthMismatch("all codes of a chain must have the same length");
  }
}

bool CodeChain::all_linear() const {
  return std::all_of(codes_.begin(), codes_.end(), [](const BinaryCode& c) { return is_linear(c); });
}

bool CodeChain::nested() const {
  for (std::size_t i = 0; i + 1 < codes_.size(); ++i) {
    if (!is_nested(codes_[i], codes_[i + 1])) return false;
  }
  return true;
}

std::uint64_t CodeChain::residue_count() const {
  std::uint64_t p = 1;
  for (const auto& c : codes_) {
    if (c.size() != 0 && p > UINT64_MAX / c.size()) return UINT64_MAX;
    p *= c.size();
  }
  return p;
}

SchurClosure schur_closed_chain(const CodeChain& chain) {
  if (!chain.all_linear() || !chain.nested()) {
    throw HypothesisViolated("Schur closure is defined for nested chains of linear codes");
  }
  for (int level = 0; level + 1 < chain.levels(); ++level) {
    const auto words = chain.code(level).words();
    const BinaryCode& next = chain.code(level + 1);
    for (std::size_t i = 0; i < words.size(); ++i) {
      for (std::size_t j = i; j < words.size(); ++j) {
        if (!next.contains_mask(words[i].mask() & words[j].mask())) {
          return {false, SchurWitness{level + 1, words[i], words[j]}};
        }
      }
    }
  }
  return {true, std::nullopt};
}

}  // namespace ccc
