#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "ccc/constellation.hpp"
#include "ccc/error.hpp"
#include "ccc/lattice.hpp"
#include "oracles.hpp"

using namespace ccc;

namespace {

BinaryCode words(int n, std::initializer_list<const char*> list) {
  std::vector<BitWord> w;
  for (const char* s : list) w.push_back(BitWord::from_string(s));
  return BinaryCode::from_words(n, w);
}

CodeChain two_point_chain() { return CodeChain({words(2, {"00", "11"}), words(2, {"00"})}); }
CodeChain three_equal_chain() {
  const auto c = words(3, {"000", "101", "110", "011"});
  return CodeChain({c, c, c});
}
CodeChain dplus(int n) { return CodeChain({repetition_code(n), even_weight_code(n)}); }

std::vector<Point> random_vectors(std::size_t count, std::size_t n, Int range, std::mt19937_64& rng) {
  std::uniform_int_distribution<Int> d(-range, range);
  std::vector<Point> out(count, Point(n));
  for (auto& p : out) {
    for (auto& v : p) v = d(rng);
  }
  return out;
}

void expect_hnf_shape(const IntegerLattice& lat) {
  const auto& b = lat.basis();
  const auto n = b.size();
  BigInt det = 1;
  for (std::size_t i = 0; i < n; ++i) {
    ASSERT_GT(b[i][i], 0);
    det *= b[i][i];
    for (std::size_t j = 0; j < i; ++j) EXPECT_EQ(b[i][j], 0);
    for (std::size_t k = 0; k < i; ++k) {
      EXPECT_GE(b[k][i], 0);
      EXPECT_LT(b[k][i], b[i][i]);
    }
  }
  EXPECT_EQ(det, lat.determinant());
}

}  // namespace

TEST(Hnf, SmallCases) {
  const auto a = hnf(std::vector<Point>{{1, 1}, {4, 0}, {0, 4}});
  EXPECT_EQ(a.basis(), (std::vector<Point>{{1, 1}, {0, 4}}));
  EXPECT_EQ(a.determinant(), 4);

  const auto id = hnf(std::vector<Point>{{1, 0}, {0, 1}});
  EXPECT_EQ(id.basis(), (std::vector<Point>{{1, 0}, {0, 1}}));
  EXPECT_EQ(id.determinant(), 1);

  const auto diag = hnf(std::vector<Point>{{8, 0, 0}, {0, 8, 0}, {0, 0, 8}});
  EXPECT_EQ(diag.determinant(), 512);
  expect_hnf_shape(diag);
}

TEST(Hnf, NegativeAndLargeEntries) {
  const auto a = hnf(std::vector<Point>{{-3, 5}, {7, -2}, {10, 10}});
  expect_hnf_shape(a);
  EXPECT_EQ(a.determinant(), 1);  // gcd of the 2x2 minors: 6-35, -30-70, -50+20
  const auto b = hnf(std::vector<Point>{{1000003, 2}, {5, 1000033}});
  expect_hnf_shape(b);
  EXPECT_EQ(b.determinant(), BigInt(1000003) * 1000033 - 10);
}

TEST(Hnf, RankDeficiencyIsReported) {
  EXPECT_THROW(hnf(std::vector<Point>{{1, 1}, {2, 2}}), RankDeficient);
  EXPECT_THROW(hnf(std::vector<Point>{}), Error);
  EXPECT_THROW(hnf(std::vector<Point>{{1, 0}, {0}}), LengthMismatch);
}

TEST(Hnf, CanonicalUnderShuffleAndAugment) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 5;
    auto gens = random_vectors(n + rng() % 4, n, 9, rng);
    for (std::size_t j = 0; j < n; ++j) {
      Point e(n, 0);
      e[j] = 16;
      gens.push_back(e);
    }
    const auto base = hnf(gens);
    expect_hnf_shape(base);

    auto shuffled = gens;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    // Adding integer combinations of generators does not change the lattice.
    shuffled.push_back(add(gens[0], gens[1]));
    shuffled.push_back(sub(gens[1], add(gens[0], gens[0])));
    EXPECT_EQ(hnf(shuffled), base);
    for (const auto& g : gens) EXPECT_TRUE(base.contains(g));
  }
}

TEST(Hnf, PeriodicAgreesWithSubgroupCount) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 4;
    const Int m = Int{1} << (1 + rng() % 3);
    const auto gens = random_vectors(rng() % 4, n, 20, rng);
    const auto lat = hnf_periodic(gens, static_cast<int>(n), m);
    expect_hnf_shape(lat);
    const std::size_t order = oracle::subgroup_size(gens, n, m);
    EXPECT_EQ(lat.points_per_period(m), BigInt(order));

    // Same lattice as the plain HNF with the period vectors appended.
    auto with_period = gens;
    for (std::size_t j = 0; j < n; ++j) {
      Point e(n, 0);
      e[j] = m;
      with_period.push_back(e);
    }
    EXPECT_EQ(hnf(with_period), lat);
  }
}

TEST(Hnf, MembershipMatchesSubgroup) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + rng() % 3;
    const Int m = 4;
    const auto gens = random_vectors(1 + rng() % 3, n, 6, rng);
    const auto lat = hnf_periodic(gens, static_cast<int>(n), m);
    // Enumerate the subgroup generated in (Z/m)^n.
    std::set<Point> group{Point(n, 0)};
    bool grew = true;
    while (grew) {
      grew = false;
      for (const auto p : std::set<Point>(group)) {
        for (const auto& g : gens) {
          Point q(n);
          for (std::size_t i = 0; i < n; ++i) q[i] = oracle::mod(p[i] + g[i], m);
          grew = group.insert(q).second || grew;
        }
      }
    }
    for (const auto& v : random_vectors(40, n, 10, rng)) {
      Point r(n);
      for (std::size_t i = 0; i < n; ++i) r[i] = oracle::mod(v[i], m);
      EXPECT_EQ(lat.contains(v), group.count(r) == 1);
    }
  }
}

TEST(SmallestLattice, TwoPointChain) {
  const auto lat = smallest_lattice(two_point_chain());
  EXPECT_EQ(lat.determinant(), 4);
  EXPECT_EQ(lat.points_per_period(4), 4);  // twice the two residues
}

TEST(SmallestLattice, ZeroCodesGiveScaledIntegers) {
  const CodeChain zero({words(3, {"000"}), words(3, {"000"})});
  EXPECT_EQ(smallest_lattice(zero).basis(), (std::vector<Point>{{4, 0, 0}, {0, 4, 0}, {0, 0, 4}}));
}

TEST(SmallestLattice, ContainsEveryResidue) {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 100; ++trial) {
    const auto chain = oracle::random_linear_chain(1 + static_cast<int>(rng() % 4), 1 + static_cast<int>(rng() % 3),
                                                   trial % 2 == 0, rng);
    const auto lat = smallest_lattice(chain);
    const auto res = oracle::residue_set(chain);
    for (const auto& r : res) EXPECT_TRUE(lat.contains(r));
    std::vector<Point> gens(res.begin(), res.end());
    EXPECT_EQ(lat.points_per_period(chain.modulus()),
              BigInt(oracle::subgroup_size(gens, static_cast<std::size_t>(chain.length()), chain.modulus())));
  }
}

TEST(NestedBasis, DPlusFour) {
  const auto b = select_nested_basis(dplus(4));
  EXPECT_EQ(b.dims, (std::vector<int>{1, 3}));
  ASSERT_EQ(b.rows.size(), 4u);
  EXPECT_EQ(b.rows[0].to_string(), "1111");
  EXPECT_EQ(f2_rank(b.rows), 4);
}

TEST(NestedBasis, ThreeEqualCodes) {
  EXPECT_EQ(select_nested_basis(three_equal_chain()).dims, (std::vector<int>{2, 2, 2}));
}

TEST(NestedBasis, PrefixesSpanEachCode) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 6);
    const auto chain = oracle::random_linear_chain(n, 1 + static_cast<int>(rng() % 3), true, rng);
    const auto b = select_nested_basis(chain);
    ASSERT_EQ(b.rows.size(), static_cast<std::size_t>(n));
    EXPECT_EQ(f2_rank(b.rows), n);
    EXPECT_TRUE(std::is_sorted(b.dims.begin(), b.dims.end()));
    for (int lv = 0; lv < chain.levels(); ++lv) {
      const auto k = static_cast<std::size_t>(b.dims[static_cast<std::size_t>(lv)]);
      EXPECT_EQ(span(n, std::span(b.rows).first(k)), chain.code(lv));
    }
  }
}

TEST(NestedBasis, RequiresNestedLinearChain) {
  EXPECT_THROW(select_nested_basis(two_point_chain()), HypothesisViolated);
  EXPECT_THROW(construction_d(two_point_chain()), HypothesisViolated);
}

TEST(ConstructionD, DPlusFourDeterminant) {
  const auto lat = construction_d(dplus(4));
  EXPECT_EQ(lat.determinant(), 16);
  EXPECT_EQ(construction_d_points(dplus(4)).size(), 16u);
}

TEST(ConstructionD, SingleLevelIsConstructionA) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 6);
    const auto chain = oracle::random_linear_chain(n, 1, true, rng);
    const auto lat = construction_d(chain);
    const int k = chain.code(0).dimension();
    EXPECT_EQ(lat.determinant(), BigInt(1) << (n - k));
    // Construction A is C + 2Z^n itself.
    for (const auto& w : chain.code(0).words()) {
      Point p(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = w[i];
      EXPECT_TRUE(lat.contains(p));
    }
  }
}

TEST(ConstructionD, ZeroDimensionsGiveScaledIntegers) {
  const CodeChain zero({words(2, {"00"}), words(2, {"00"})});
  EXPECT_EQ(construction_d(zero).basis(), (std::vector<Point>{{4, 0}, {0, 4}}));
}

TEST(ConstructionD, DeterminantIdentity) {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 5);
    const int levels = 1 + static_cast<int>(rng() % 3);
    const auto chain = oracle::random_linear_chain(n, levels, true, rng);
    const auto b = select_nested_basis(chain);
    int sum_k = 0;
    for (int k : b.dims) sum_k += k;
    EXPECT_EQ(construction_d(chain).determinant() * (BigInt(1) << sum_k), BigInt(1) << (levels * n));
  }
}

TEST(DirectTest, TwoPointChainWitness) {
  const auto r = is_lattice_direct(two_point_chain());
  EXPECT_FALSE(r.is_lattice);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_EQ(r.witness->first, (Point{1, 1}));
  EXPECT_EQ(r.witness->second, (Point{1, 1}));
}

TEST(DirectTest, KnownLattices) {
  EXPECT_TRUE(is_lattice_direct(dplus(4)).is_lattice);
  EXPECT_FALSE(is_lattice_direct(dplus(5)).is_lattice);
  EXPECT_TRUE(is_lattice_direct(CodeChain({words(3, {"000", "101", "110", "011"})})).is_lattice);
}

TEST(DirectTest, MatchesClosureOracle) {
  std::mt19937_64 rng(15);
  int lattices = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 3);
    const int levels = 1 + static_cast<int>(rng() % 3);
    CodeChain chain = trial % 3 == 0 ? oracle::random_schur_closed_chain(n, levels, rng)
                                     : oracle::random_linear_chain(n, levels, trial % 3 == 1, rng);
    if (trial % 5 == 4) {
      // Nonlinear codes take the pairwise path.
      std::vector<BinaryCode> codes;
      for (int lv = 0; lv < levels; ++lv) {
        std::vector<BitWord> w;
        for (int i = 0; i < 3; ++i) w.emplace_back(n, static_cast<std::uint32_t>(rng() % (1u << n)));
        codes.push_back(BinaryCode::from_words(n, w));
      }
      chain = CodeChain(codes);
    }
    const auto res = oracle::residue_set(chain);
    const bool expect = oracle::closed_under_addition(res, chain.modulus());
    const auto r = is_lattice_direct(chain);
    EXPECT_EQ(r.is_lattice, expect);
    if (r.witness) {
      EXPECT_TRUE(oracle::member(res, chain.modulus(), r.witness->first));
      EXPECT_TRUE(oracle::member(res, chain.modulus(), r.witness->second));
      EXPECT_FALSE(oracle::member(res, chain.modulus(), add(r.witness->first, r.witness->second)));
    }
    lattices += expect;
  }
  EXPECT_GT(lattices, 30);
  EXPECT_LT(lattices, 270);
}

TEST(Theorem1Report, KnownChains) {
  const auto d4 = theorem1_report(dplus(4));
  EXPECT_TRUE(d4.is_lattice && d4.equals_lambda_c && d4.schur_closed && d4.equals_lambda_d);
  EXPECT_EQ(d4.det_lambda_c, 16);
  EXPECT_EQ(d4.det_lambda_d, 16);

  const auto e5 = theorem1_report(three_equal_chain());
  EXPECT_FALSE(e5.is_lattice || e5.equals_lambda_c || e5.schur_closed || e5.equals_lambda_d);
  EXPECT_TRUE(e5.nested);

  const auto d3 = theorem1_report(dplus(3));
  EXPECT_FALSE(d3.is_lattice || d3.equals_lambda_c || d3.schur_closed || d3.equals_lambda_d);
  EXPECT_FALSE(d3.nested);
  EXPECT_TRUE(d3.consistent());
}

TEST(Theorem1Report, LatticeForcesNesting) {
  // Any linear chain that is a lattice must be nested.
  std::mt19937_64 rng(16);
  for (int trial = 0; trial < 300; ++trial) {
    const auto chain = oracle::random_linear_chain(1 + static_cast<int>(rng() % 3), 2 + static_cast<int>(rng() % 2), false, rng);
    const auto r = theorem1_report(chain);
    EXPECT_TRUE(r.consistent());
    if (r.is_lattice) EXPECT_TRUE(r.nested);
  }
}

TEST(Theorem1Report, RejectsNonlinearCodes) {
  EXPECT_THROW(theorem1_report(CodeChain({words(2, {"00", "01", "11"}), full_space(2)})), HypothesisViolated);
}
