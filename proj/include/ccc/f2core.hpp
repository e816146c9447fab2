#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ccc {

/// A word of F_2^n, n <= 24.
///
/// Coordinate 0 is stored in the most significant of the n used bits, so the
/// numeric order of masks of equal length is the lexicographic order of the
/// coordinate sequences. Every "lexicographically first" rule in the library
/// relies on this.
class BitWord {
 public:
  static constexpr int kMaxLength = 24;

  BitWord() = default;
  BitWord(int n, std::uint32_t mask);

  static BitWord zeros(int n) { return BitWord(n, 0); }
  static BitWord ones(int n);
  static BitWord from_string(std::string_view bits);
  static BitWord from_bits(std::span<const int> bits);
  static BitWord unit(int n, int i);

  int size() const { return n_; }
  std::uint32_t mask() const { return mask_; }
  bool operator[](int i) const { return (mask_ >> (n_ - 1 - i)) & 1u; }
  int weight() const;
  bool is_zero() const { return mask_ == 0; }

  std::vector<int> bits() const;
  std::string to_string() const;

  auto operator<=>(const BitWord&) const = default;

 private:
  int n_ = 0;
  std::uint32_t mask_ = 0;
};

BitWord xor_add(const BitWord& a, const BitWord& b);

/// Component-wise product (x1*y1, ..., xn*yn).
BitWord schur(const BitWord& a, const BitWord& b);

/// A binary block code given by its explicit word set. Immutable; copies share
/// storage.
class BinaryCode {
 public:
  static constexpr std::size_t kMaxWords = std::size_t{1} << 20;
  static constexpr std::size_t kMaxGenerators = 20;

  /// Deduplicates and sorts `words`. Throws on an empty list, a length
  /// mismatch or a size guard violation.
  static BinaryCode from_words(int n, std::vector<BitWord> words);

  int length() const { return n_; }
  std::size_t size() const { return store_->words.size(); }
  std::span<const BitWord> words() const { return store_->words; }
  const std::optional<std::vector<BitWord>>& generators() const { return generators_; }

  bool contains(const BitWord& w) const;
  bool contains_mask(std::uint32_t mask) const {
    return (store_->bitmap[mask >> 6] >> (mask & 63u)) & 1u;
  }

  /// log2(size()) for linear codes; throws HypothesisViolated otherwise.
  int dimension() const;

  bool operator==(const BinaryCode& other) const;

 private:
  friend BinaryCode span(int n, std::span<const BitWord> generators);

  struct Store {
    std::vector<BitWord> words;
    std::vector<std::uint64_t> bitmap;
  };

  BinaryCode() = default;

  int n_ = 0;
  std::shared_ptr<const Store> store_;
  std::optional<std::vector<BitWord>> generators_;
};

/// All F_2-linear combinations of `generators` (each of length n). The result
/// remembers the generator rows.
BinaryCode span(int n, std::span<const BitWord> generators);

/// Rank over F_2.
int f2_rank(std::span<const BitWord> rows);

bool is_linear(const BinaryCode& code);

/// Every word of `inner` belongs to `outer`.
bool is_nested(const BinaryCode& inner, const BinaryCode& outer);

BinaryCode repetition_code(int n);
BinaryCode even_weight_code(int n);
BinaryCode full_space(int n);

}  // namespace ccc
