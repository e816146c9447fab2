#include <gtest/gtest.h>

#include <random>

#include "ccc/chain.hpp"
#include "ccc/error.hpp"
#include "ccc/f2core.hpp"
#include "oracles.hpp"

using namespace ccc;

namespace {

BinaryCode words(int n, std::initializer_list<const char*> list) {
  std::vector<BitWord> w;
  for (const char* s : list) w.push_back(BitWord::from_string(s));
  return BinaryCode::from_words(n, w);
}

}  // namespace

TEST(BitWord, StringRoundTripAndIndexing) {
  const auto w = BitWord::from_string("1011");
  EXPECT_EQ(w.size(), 4);
  EXPECT_EQ(w.to_string(), "1011");
  EXPECT_TRUE(w[0]);
  EXPECT_FALSE(w[1]);
  EXPECT_EQ(w.weight(), 3);
  EXPECT_EQ(w.bits(), (std::vector<int>{1, 0, 1, 1}));
  EXPECT_EQ(BitWord::from_bits(w.bits()), w);
  EXPECT_EQ(BitWord::unit(4, 2).to_string(), "0010");
  EXPECT_EQ(BitWord::ones(3).to_string(), "111");
}

TEST(BitWord, OrderIsLexicographic) {
  std::vector<std::string> all;
  for (std::uint32_t m = 0; m < 16; ++m) all.push_back(BitWord(4, m).to_string());
  EXPECT_TRUE(std::is_sorted(all.begin(), all.end()));
  EXPECT_LT(BitWord::from_string("0111"), BitWord::from_string("1000"));
}

TEST(BitWord, RejectsBadInput) {
  EXPECT_THROW(BitWord::from_string("012"), Error);
  EXPECT_THROW(BitWord::from_string(std::string(25, '0')), Error);
  EXPECT_THROW(xor_add(BitWord::zeros(2), BitWord::zeros(3)), LengthMismatch);
  EXPECT_THROW(schur(BitWord::zeros(2), BitWord::zeros(3)), LengthMismatch);
}

TEST(BitWord, XorAndSchur) {
  EXPECT_EQ(schur(BitWord::from_string("101"), BitWord::from_string("110")).to_string(), "100");
  EXPECT_EQ(xor_add(BitWord::from_string("101"), BitWord::from_string("110")).to_string(), "011");
  EXPECT_EQ(schur(BitWord::from_string("011"), BitWord::from_string("101")).to_string(), "001");
}

TEST(BinaryCode, FromWordsSortsAndDeduplicates) {
  const auto c = words(3, {"110", "000", "110", "011"});
  ASSERT_EQ(c.size(), 3u);
  EXPECT_EQ(c.words()[0].to_string(), "000");
  EXPECT_EQ(c.words()[2].to_string(), "110");
  EXPECT_TRUE(c.contains(BitWord::from_string("011")));
  EXPECT_FALSE(c.contains(BitWord::from_string("111")));
  EXPECT_THROW(BinaryCode::from_words(3, {}), Error);
  EXPECT_THROW(words(3, {"000", "11"}), LengthMismatch);
}

TEST(BinaryCode, SpanOfTwoGenerators) {
  const std::vector<BitWord> gens{BitWord::from_string("101"), BitWord::from_string("110")};
  const auto c = span(3, gens);
  EXPECT_EQ(c, words(3, {"000", "101", "110", "011"}));
  EXPECT_TRUE(is_linear(c));
  EXPECT_EQ(c.dimension(), 2);
  ASSERT_TRUE(c.generators().has_value());
  EXPECT_EQ(c.generators()->size(), 2u);
}

TEST(BinaryCode, SpanOfRepetitionWord) {
  const std::vector<BitWord> gens{BitWord::from_string("11")};
  EXPECT_EQ(span(2, gens), words(2, {"00", "11"}));
  EXPECT_EQ(span(2, std::vector<BitWord>{}), words(2, {"00"}));
}

TEST(BinaryCode, Linearity) {
  EXPECT_TRUE(is_linear(words(3, {"000", "101", "110", "011"})));
  EXPECT_FALSE(is_linear(words(2, {"00", "01", "11"})));
  EXPECT_FALSE(is_linear(words(2, {"01", "10", "11"})));  // no zero word
  EXPECT_THROW(words(2, {"00", "01", "11"}).dimension(), HypothesisViolated);
}

TEST(BinaryCode, StandardFamilies) {
  for (int n = 1; n <= 10; ++n) {
    EXPECT_EQ(repetition_code(n).size(), 2u);
    EXPECT_EQ(even_weight_code(n).size(), std::size_t{1} << (n - 1));
    EXPECT_EQ(full_space(n).size(), std::size_t{1} << n);
    const auto even = even_weight_code(n);
    for (const auto& w : even.words()) EXPECT_EQ(w.weight() % 2, 0);
    EXPECT_EQ(is_nested(repetition_code(n), even_weight_code(n)), n % 2 == 0);
  }
}

TEST(BinaryCode, RankMatchesClosureSize) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 10);
    const int k = static_cast<int>(rng() % 8);
    std::vector<BitWord> rows;
    std::vector<std::uint32_t> masks;
    for (int i = 0; i < k; ++i) {
      const auto m = static_cast<std::uint32_t>(rng() % (1u << n));
      rows.emplace_back(n, m);
      masks.push_back(m);
    }
    const auto closure = oracle::xor_closure(n, masks);
    EXPECT_EQ(std::size_t{1} << f2_rank(rows), closure.size());
    EXPECT_EQ(span(n, rows), oracle::code_from_masks(n, closure));
  }
}

TEST(CodeChain, BasicProperties) {
  const CodeChain c({words(2, {"00", "11"}), words(2, {"00"})});
  EXPECT_EQ(c.length(), 2);
  EXPECT_EQ(c.levels(), 2);
  EXPECT_EQ(c.modulus(), 4);
  EXPECT_TRUE(c.all_linear());
  EXPECT_FALSE(c.nested());
  EXPECT_EQ(c.residue_count(), 2u);
  EXPECT_THROW(CodeChain({words(2, {"00"}), words(3, {"000"})}), LengthMismatch);
  EXPECT_THROW(CodeChain(std::vector<BinaryCode>{}), Error);
}

TEST(SchurClosure, ThreeEqualCodesFail) {
  const auto c = words(3, {"000", "101", "110", "011"});
  const CodeChain chain({c, c, c});
  const auto r = schur_closed_chain(chain);
  EXPECT_FALSE(r.closed);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_EQ(r.witness->level, 1);
  // Lexicographically first failing pair.
  EXPECT_EQ(r.witness->x.to_string(), "011");
  EXPECT_EQ(r.witness->y.to_string(), "101");
  // The pair (101, 110) fails as well: its product 100 is not in C_2.
  EXPECT_FALSE(c.contains(schur(BitWord::from_string("101"), BitWord::from_string("110"))));
}

TEST(SchurClosure, EvenLengthDPlusIsClosed) {
  for (int n = 2; n <= 10; n += 2) {
    EXPECT_TRUE(schur_closed_chain(CodeChain({repetition_code(n), even_weight_code(n)})).closed) << n;
  }
}

TEST(SchurClosure, TopLevelProductsAreIgnored) {
  // C_L * C_L is never tested: a single full level is always closed.
  EXPECT_TRUE(schur_closed_chain(CodeChain({words(3, {"000", "101", "110", "011"})})).closed);
}

TEST(SchurClosure, MatchesPairwiseOracle) {
  std::mt19937_64 rng(5);
  int closed = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 5);
    const int levels = 1 + static_cast<int>(rng() % 3);
    const auto chain = trial % 2 ? oracle::random_schur_closed_chain(n, levels, rng)
                                 : oracle::random_linear_chain(n, levels, true, rng);
    bool expect = true;
    for (int lv = 0; lv + 1 < levels; ++lv) {
      for (const auto& a : chain.code(lv).words()) {
        for (const auto& b : chain.code(lv).words()) {
          expect = expect && chain.code(lv + 1).contains(BitWord(n, a.mask() & b.mask()));
        }
      }
    }
    const auto r = schur_closed_chain(chain);
    EXPECT_EQ(r.closed, expect);
    if (r.witness) {
      const auto& w = *r.witness;
      EXPECT_LE(w.x, w.y);
      EXPECT_FALSE(chain.code(w.level).contains(schur(w.x, w.y)));
    }
    closed += expect;
  }
  // Both outcomes must be exercised.
  EXPECT_GT(closed, 50);
  EXPECT_LT(closed, 395);
}

TEST(SchurClosure, NeedsNestedLinearChain) {
  EXPECT_THROW(schur_closed_chain(CodeChain({words(2, {"00", "11"}), words(2, {"00"})})), HypothesisViolated);
  EXPECT_THROW(schur_closed_chain(CodeChain({words(2, {"00", "01", "11"}), full_space(2)})), HypothesisViolated);
}
