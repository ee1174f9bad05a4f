/// @file primary_test.cpp
/// @brief Primary components: element arithmetic, atom structure, and the
///        short-factorization property of higher ranks.

#include "deltakit/primary.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "deltakit/factor.hpp"
#include "oracles.hpp"

using namespace deltakit;

namespace {

FiniteAbelianGroup c2() { return FiniteAbelianGroup::cyclic(2); }

PrimaryComponentSpec rank2_units_c2(const FiniteAbelianGroup& g) {
  return make_primary_component(g, 2, {g.element({1})},
                                {g.element({1}), g.element({1})});
}

}  // namespace

TEST(PrimaryComponent, ValidatesShape) {
  FiniteAbelianGroup g = c2();
  EXPECT_THROW(make_primary_component(g, 0, {}, {}), std::invalid_argument);
  EXPECT_THROW(make_primary_component(g, 2, {}, {g.element({1})}),
               std::invalid_argument);
  PrimaryComponentSpec spec = rank2_units_c2(g);
  EXPECT_EQ(spec.rank, 2);
  EXPECT_EQ(spec.unit_classes.size(), 2u);
  EXPECT_FALSE(spec.factorial_model);
}

TEST(PrimaryComponent, FactorialModelFlag) {
  FiniteAbelianGroup g = c2();
  PrimaryComponentSpec spec =
      make_primary_component(g, 1, {}, {g.element({0})});
  EXPECT_TRUE(spec.factorial_model);
}

TEST(PrimaryElement, MultiplyDivide) {
  FiniteAbelianGroup g = c2();
  PrimaryComponentSpec spec = rank2_units_c2(g);
  PrimaryElement a = make_primary_element(g, spec, g.element({1}), {1, 2});
  PrimaryElement b = make_primary_element(g, spec, g.element({0}), {2, 1});
  PrimaryElement ab = primary_multiply(g, a, b);
  EXPECT_EQ(ab.unit_class, g.element({1}));
  EXPECT_EQ(ab.exponents, (std::vector<Coord>{3, 3}));
  auto q = primary_divide(g, ab, a);
  ASSERT_TRUE(q.has_value());
  EXPECT_EQ(*q, b);
  EXPECT_FALSE(primary_divide(g, a, ab).has_value());
  EXPECT_TRUE(primary_divides(g, b, ab));
}

TEST(PrimaryElement, IdentityBehaviour) {
  FiniteAbelianGroup g = c2();
  PrimaryComponentSpec spec = rank2_units_c2(g);
  PrimaryElement id = primary_identity(g);
  EXPECT_TRUE(id.is_identity());
  PrimaryElement a = make_primary_element(g, spec, g.element({0}), {1, 1});
  EXPECT_EQ(primary_multiply(g, id, a), a);
  EXPECT_EQ(primary_max_length(id), 0);
  EXPECT_THROW(primary_is_atom(id), std::invalid_argument);
}

TEST(PrimaryElement, AtomIffSomeExponentIsOne) {
  FiniteAbelianGroup g = c2();
  PrimaryComponentSpec spec = rank2_units_c2(g);
  EXPECT_TRUE(primary_is_atom(
      make_primary_element(g, spec, g.element({1}), {1, 5})));
  EXPECT_FALSE(primary_is_atom(
      make_primary_element(g, spec, g.element({1}), {2, 2})));
  EXPECT_EQ(primary_max_length(
                make_primary_element(g, spec, g.element({0}), {3, 5})),
            3);
}

TEST(PrimaryElement, RejectsBadConstruction) {
  FiniteAbelianGroup g = c2();
  PrimaryComponentSpec spec = rank2_units_c2(g);
  EXPECT_THROW(make_primary_element(g, spec, g.element({1}), {}),
               std::invalid_argument);
  EXPECT_THROW(make_primary_element(g, spec, g.element({1}), {0, 1}),
               std::invalid_argument);
  EXPECT_THROW(make_primary_element(g, spec, g.element({1}), {1}),
               std::invalid_argument);
}

TEST(PrimaryMonoid, AtomsDividingMatchesDefinition) {
  FiniteAbelianGroup g = c2();
  PrimaryMonoid m(g, rank2_units_c2(g));
  std::vector<PrimaryElement> region = m.enumerate_region(4);
  for (const PrimaryElement& a : region) {
    if (a.is_identity()) continue;
    std::vector<PrimaryElement> got = m.atoms_dividing(a);
    std::set<PrimaryElement> got_set(got.begin(), got.end());
    EXPECT_EQ(got_set.size(), got.size());
    std::set<PrimaryElement> want;
    for (const PrimaryElement& u : region) {
      if (u.is_identity()) continue;
      if (primary_is_atom(u) && primary_divides(g, u, a)) want.insert(u);
    }
    EXPECT_EQ(got_set, want);
  }
}

TEST(PrimaryMonoid, RankOneIsHalfFactorial) {
  // Rank 1: every element has the single length k, so all distance sets are
  // empty and the catenary degree never exceeds 2.
  FiniteAbelianGroup g = c2();
  PrimaryComponentSpec spec =
      make_primary_component(g, 1, {g.element({1})}, {g.element({1})});
  PrimaryMonoid m(g, spec);
  FactorEngine<PrimaryMonoid> engine(m);
  for (const PrimaryElement& a : m.enumerate_region(6)) {
    if (a.is_identity()) continue;
    LengthSet L = engine.length_set(a);
    ASSERT_EQ(L.size(), 1u);
    EXPECT_EQ(L[0], a.exponents[0]);
    EXPECT_LE(engine.catenary_degree(a), 2);
  }
}

TEST(PrimaryMonoid, HigherRankReducibleElementsFactorInTwo) {
  FiniteAbelianGroup g = c2();
  PrimaryMonoid m(g, rank2_units_c2(g));
  FactorEngine<PrimaryMonoid> engine(m);
  Coord max_catenary = 0;
  for (const PrimaryElement& a : m.enumerate_region(6)) {
    if (a.is_identity() || primary_is_atom(a)) continue;
    LengthSet L = engine.length_set(a);
    EXPECT_EQ(L.front(), 2);
    EXPECT_EQ(L.back(), primary_max_length(a));
    max_catenary = std::max(max_catenary, engine.catenary_degree(a));
  }
  EXPECT_EQ(max_catenary, 3);
}

TEST(PrimaryMonoid, EngineMatchesOracleOnSmallRegion) {
  FiniteAbelianGroup g = c2();
  PrimaryMonoid m(g, rank2_units_c2(g));
  FactorEngine<PrimaryMonoid> engine(m);
  for (const PrimaryElement& a : m.enumerate_region(4)) {
    if (a.is_identity()) continue;
    auto want = oracle::factorizations(m, a);
    EXPECT_EQ(engine.length_set(a), oracle::lengths_of(want));
    EXPECT_EQ(engine.catenary_degree(a),
              oracle::catenary_by_threshold(want));
  }
}

TEST(PrimaryMonoid, CanonicalKeyOrderMatchesLess) {
  FiniteAbelianGroup g = c2();
  PrimaryMonoid m(g, rank2_units_c2(g));
  std::vector<PrimaryElement> region = m.enumerate_region(3);
  for (const PrimaryElement& a : region) {
    for (const PrimaryElement& b : region) {
      EXPECT_EQ(m.less(a, b), m.canonical_key(a) < m.canonical_key(b));
    }
  }
}
