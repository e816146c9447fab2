#include <gtest/gtest.h>

#include <random>

#include "ccc/constellation.hpp"
#include "ccc/error.hpp"
#include "ccc/spectrum.hpp"
#include "oracles.hpp"

using namespace ccc;

namespace {

BinaryCode words(int n, std::initializer_list<const char*> list) {
  std::vector<BitWord> w;
  for (const char* s : list) w.push_back(BitWord::from_string(s));
  return BinaryCode::from_words(n, w);
}

CodeChain two_point_chain() { return CodeChain({words(2, {"00", "11"}), words(2, {"00"})}); }
CodeChain sparse_top_chain() { return CodeChain({words(1, {"0", "1"}), words(1, {"0", "1"}), words(1, {"0"})}); }

}  // namespace

TEST(CwEquidistant, SignChangesOnly) {
  EXPECT_TRUE(cw_equidistant(Point{-4, 3, -5}, Point{4, 3, 5}));
  EXPECT_FALSE(cw_equidistant(Point{4, 3, 5}, Point{5, 4, 3}));
  EXPECT_TRUE(cw_equidistant(Point{}, Point{}));
  EXPECT_THROW(cw_equidistant(Point{1}, Point{1, 2}), LengthMismatch);
}

TEST(SpectrumAt, SparseTopChainKissing) {
  const auto chain = sparse_top_chain();
  const auto at0 = spectrum_at(chain, Point{0}, 1);
  EXPECT_EQ(at0.counts, (std::map<Int, std::uint64_t>{{1, 1}}));
  const auto at1 = spectrum_at(chain, Point{1}, 1);
  EXPECT_EQ(at1.counts, (std::map<Int, std::uint64_t>{{1, 2}}));
}

TEST(SpectrumAt, TwoPointChainMatchesBox) {
  const auto chain = two_point_chain();
  const auto res = oracle::residue_set(chain);
  for (const Point& c : {Point{0, 0}, Point{1, 1}, Point{5, -3}}) {
    const auto t = spectrum_at(chain, c, 18);
    EXPECT_EQ(t.counts, oracle::box_spectrum(res, 4, c, 18));
    EXPECT_EQ(t.min_distance2(), 2);
    EXPECT_EQ(t.at(2), 1u);
  }
}

TEST(SpectrumAt, Errors) {
  EXPECT_THROW(spectrum_at(sparse_top_chain(), Point{6}, 4), NotAMember);
  EXPECT_THROW(spectrum_at(sparse_top_chain(), Point{0}, 0), Error);
}

TEST(ResidueSpectra, BothRoutesMatchBoxOracle) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 3);
    const int levels = 1 + static_cast<int>(rng() % 3);
    const auto chain = oracle::random_linear_chain(n, levels, trial % 2 == 0, rng);
    const Int r2max = 1 + static_cast<Int>(rng() % 40);
    const auto res = oracle::residue_set(chain);
    const auto tables = residue_spectra(chain, r2max, 2);
    ASSERT_EQ(tables.size(), res.size());
    std::size_t i = 0;
    for (const auto& c : res) {
      const auto expect = oracle::box_spectrum(res, chain.modulus(), c, r2max);
      EXPECT_EQ(tables[i].center, c);
      EXPECT_EQ(tables[i].counts, expect);
      EXPECT_EQ(spectrum_at(chain, c, r2max).counts, expect);
      ++i;
    }
  }
}

TEST(ResidueSpectra, LargeRadiusFallsBackToDirectEnumeration) {
  // 2^(nL) classes times r2max + 1 entries exceeds the table budget here.
  const CodeChain chain({full_space(5), even_weight_code(5), repetition_code(5)});
  const Int r2max = 300;
  const auto tables = residue_spectra(chain, r2max, 1);
  EXPECT_EQ(tables.front().counts, spectrum_at(chain, tables.front().center, r2max).counts);
  EXPECT_EQ(tables.back().counts, spectrum_at(chain, tables.back().center, r2max).counts);
}

TEST(Eds, SparseTopChainWitness) {
  const auto r = eds_check(sparse_top_chain(), 4);
  EXPECT_FALSE(r.equal);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_EQ(r.witness->center, Point{0});
  EXPECT_EQ(r.witness->other, Point{1});
  EXPECT_EQ(r.witness->d2, 1);
  EXPECT_EQ(r.witness->count_center, 1u);
  EXPECT_EQ(r.witness->count_other, 2u);
}

TEST(Eds, TwoPointChainIsEquiDistant) {
  const auto r = eds_check(two_point_chain(), 18);
  EXPECT_TRUE(r.equal);
  EXPECT_FALSE(r.witness.has_value());
  EXPECT_EQ(default_r2max(two_point_chain()), 64);
}

TEST(Eds, WitnessIsSmallestDisagreement) {
  std::mt19937_64 rng(22);
  int unequal = 0;
  for (int trial = 0; trial < 80; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 3);
    const auto chain = oracle::random_linear_chain(n, 3, trial % 2 == 0, rng);
    const auto r = eds_check(chain, 20);
    if (r.equal) continue;
    ++unequal;
    const auto& w = *r.witness;
    const auto res = oracle::residue_set(chain);
    const auto a = oracle::box_spectrum(res, chain.modulus(), w.center, 20);
    const auto b = oracle::box_spectrum(res, chain.modulus(), w.other, 20);
    auto count = [](const std::map<Int, std::uint64_t>& m, Int d) {
      auto it = m.find(d);
      return it == m.end() ? std::uint64_t{0} : it->second;
    };
    EXPECT_EQ(count(a, w.d2), w.count_center);
    EXPECT_EQ(count(b, w.d2), w.count_other);
    EXPECT_NE(w.count_center, w.count_other);
    for (Int d = 1; d < w.d2; ++d) EXPECT_EQ(count(a, d), count(b, d));
  }
  EXPECT_GT(unequal, 5);
}

TEST(Kissing, KnownChains) {
  const auto a = kissing_stats(sparse_top_chain());
  EXPECT_EQ(a.d2min, 1);
  EXPECT_EQ(a.kissing_values, (std::set<std::uint64_t>{1, 2}));
  const auto b = kissing_stats(two_point_chain());
  EXPECT_EQ(b.d2min, 2);
  EXPECT_EQ(b.kissing_values, (std::set<std::uint64_t>{1}));
}

TEST(CwCandidates, DistinctSortedPatterns) {
  EXPECT_EQ(cw_candidates(Point{9}, Point{3}), (std::vector<Point>{{6}, {12}}));
  EXPECT_EQ(cw_candidates(Point{0, 0}, Point{0, -2}), (std::vector<Point>{{0, -2}, {0, 2}}));
  EXPECT_EQ(cw_candidates(Point{1, 1}, Point{1, 1}).size(), 4u);
}

TEST(CwCount, TwoPointChain) {
  EXPECT_EQ(cw_count(two_point_chain(), Point{0, 0}, Point{1, 1}), 1u);
  EXPECT_EQ(cw_count(two_point_chain(), Point{1, 1}, Point{1, 1}), 1u);
}

TEST(CwCount, SameForEveryPointAtTwoLevels) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 4);
    const auto chain = oracle::random_linear_chain(n, 2, trial % 2 == 0, rng);
    const auto res = oracle::residue_set(chain);
    Point e(static_cast<std::size_t>(n));
    for (auto& v : e) v = static_cast<Int>(rng() % 9) - 4;
    const std::uint64_t ref = cw_count(chain, Point(static_cast<std::size_t>(n), 0), e);
    for (int k = 0; k < 10; ++k) {
      EXPECT_EQ(cw_count(chain, oracle::random_member(res, 4, 3, rng), e), ref);
    }
  }
}
