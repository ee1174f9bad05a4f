/// @file factor_test.cpp
/// @brief Factorization engine: length sets, distances, and catenary degrees
///        against brute-force oracles.

#include "deltakit/factor.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "deltakit/zerosum.hpp"
#include "oracles.hpp"

using namespace deltakit;

TEST(LengthSetHelpers, DeltaAndMaxGap) {
  EXPECT_EQ(delta_of({2, 3, 5}), (std::vector<Coord>{1, 2}));
  EXPECT_EQ(delta_of({4}), std::vector<Coord>{});
  EXPECT_EQ(delta_of({}), std::vector<Coord>{});
  EXPECT_EQ(max_gap({2, 3, 5}), 2);
  EXPECT_EQ(max_gap({7}), 0);
}

TEST(FactorEngine, CyclicThreeShowcase) {
  // Over C3 the element 1^3 * 2^3 factors as (1^3)(2^3) and (1*2)^3.
  FiniteAbelianGroup g = FiniteAbelianGroup::cyclic(3);
  ZeroSumMonoid m(g);
  FactorEngine<ZeroSumMonoid> engine(m);
  Sequence a = Sequence::single(g.element({1}), 3);
  a.push(g.element({2}), 3);
  EXPECT_EQ(engine.length_set(a), (LengthSet{2, 3}));
  auto zs = engine.factorizations(a);
  ASSERT_EQ(zs->all.size(), 2u);
  EXPECT_EQ(engine.distance(a, zs->all[0], zs->all[1]), 3);
  EXPECT_EQ(engine.catenary_degree(a), 3);
}

TEST(FactorEngine, IdentityHasTheEmptyFactorization) {
  FiniteAbelianGroup g = FiniteAbelianGroup::cyclic(3);
  ZeroSumMonoid m(g);
  FactorEngine<ZeroSumMonoid> engine(m);
  EXPECT_EQ(engine.length_set(Sequence::empty()), (LengthSet{0}));
  EXPECT_EQ(engine.catenary_degree(Sequence::empty()), 0);
}

TEST(FactorEngine, AtomHasUniqueLengthOne) {
  FiniteAbelianGroup g = FiniteAbelianGroup::cyclic(3);
  ZeroSumMonoid m(g);
  FactorEngine<ZeroSumMonoid> engine(m);
  Sequence atom = Sequence::single(g.element({1}), 3);
  EXPECT_EQ(engine.length_set(atom), (LengthSet{1}));
  EXPECT_EQ(engine.catenary_degree(atom), 0);
}

TEST(FactorEngine, ThrowsOnNonFactorableElement) {
  FiniteAbelianGroup g = FiniteAbelianGroup::cyclic(3);
  ZeroSumMonoid m(g);
  FactorEngine<ZeroSumMonoid> engine(m);
  // Not a member: sigma != 0, so it has no factorization into atoms.
  EXPECT_THROW(engine.length_set(Sequence::single(g.element({1}), 2)),
               std::logic_error);
}

TEST(FactorEngine, SweepAgainstOraclesOverRankTwoRegion) {
  FiniteAbelianGroup g({2, 2});
  ZeroSumMonoid m(g);
  FactorEngine<ZeroSumMonoid> engine(m);
  for (const Sequence& s : m.enumerate_region(9)) {
    auto want = oracle::factorizations(m, s);
    auto got = engine.factorizations(s);
    ASSERT_EQ(got->all.size(), want.size()) << s.to_string();
    EXPECT_EQ(engine.length_set(s), oracle::lengths_of(want));
    if (want.size() <= 60) {
      EXPECT_EQ(engine.catenary_degree(s),
                oracle::catenary_by_threshold(want))
          << s.to_string();
    }
  }
}

TEST(FactorEngine, DistanceMatchesOracleOnSamples) {
  FiniteAbelianGroup g = FiniteAbelianGroup::cyclic(4);
  ZeroSumMonoid m(g);
  FactorEngine<ZeroSumMonoid> engine(m);
  for (const Sequence& s : m.enumerate_region(8)) {
    auto zs = engine.factorizations(s);
    if (zs->all.size() < 2) continue;
    auto keyed = oracle::factorizations(m, s);
    ASSERT_EQ(keyed.size(), zs->all.size());
    // Compare all pairwise distances as multisets; both sides enumerate the
    // same factorization set, possibly in different orders.
    std::multiset<Coord> got, want;
    for (std::size_t i = 0; i < zs->all.size(); ++i) {
      for (std::size_t j = i + 1; j < zs->all.size(); ++j) {
        got.insert(engine.distance(s, zs->all[i], zs->all[j]));
        want.insert(oracle::distance(keyed[i], keyed[j]));
      }
    }
    EXPECT_EQ(got, want) << s.to_string();
  }
}

TEST(FactorEngine, VerifyRefactorOptionStaysConsistent) {
  FiniteAbelianGroup g = FiniteAbelianGroup::cyclic(5);
  ZeroSumMonoid m(g);
  EngineOptions opt;
  opt.verify_refactor = true;
  FactorEngine<ZeroSumMonoid> engine(m, opt);
  Sequence a = Sequence::single(g.element({1}), 5);
  a.push(g.element({4}), 5);
  EXPECT_EQ(engine.length_set(a).front(), 2);
  EXPECT_GE(engine.catenary_degree(a), 2);
}

TEST(UnionFindBasics, UniteAndConnectivity) {
  UnionFind uf(4);
  EXPECT_EQ(uf.components(), 4u);
  EXPECT_TRUE(uf.unite(0, 1));
  EXPECT_TRUE(uf.unite(2, 3));
  EXPECT_FALSE(uf.unite(0, 1));
  EXPECT_EQ(uf.components(), 2u);
  EXPECT_NE(uf.find(1), uf.find(2));
  uf.unite(1, 2);
  EXPECT_EQ(uf.find(0), uf.find(3));
  EXPECT_EQ(uf.components(), 1u);
}
