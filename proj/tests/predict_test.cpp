/// @file predict_test.cpp
/// @brief The closed-form distance predictor for |G| = 2 block structures
///        and its self-verifying witness constructions.

#include "deltakit/predict.hpp"

#include <gtest/gtest.h>

#include "deltakit/factor.hpp"

using namespace deltakit;

namespace {

FiniteAbelianGroup c2() { return FiniteAbelianGroup::cyclic(2); }

PrimaryComponentSpec comp(const FiniteAbelianGroup& g, bool units,
                          std::vector<int> one_bits) {
  std::vector<GroupElement> gens;
  if (units) gens.push_back(g.element({1}));
  std::vector<GroupElement> primes;
  for (int b : one_bits) primes.push_back(g.element({b}));
  return make_primary_component(g, static_cast<int>(one_bits.size()),
                                std::move(gens), std::move(primes));
}

TBlockSpec spec_of(std::vector<PrimaryComponentSpec> comps) {
  return make_tblock_spec(c2(), std::move(comps));
}

}  // namespace

TEST(ComponentDelta, TableCoversAllFourValues) {
  FiniteAbelianGroup g = c2();
  // Trivial unit classes, two primes, both nonzero: d = 2.
  EXPECT_EQ(order_two_component_delta(g, comp(g, false, {1, 1})), 2);
  // Trivial unit classes, a single prime: d = 0.
  EXPECT_EQ(order_two_component_delta(g, comp(g, false, {1})), 0);
  EXPECT_EQ(order_two_component_delta(g, comp(g, false, {0})), 0);
  // Trivial unit classes, several primes, none nonzero: d = -1.
  EXPECT_EQ(order_two_component_delta(g, comp(g, false, {0, 0})), -1);
  EXPECT_EQ(order_two_component_delta(g, comp(g, false, {0, 0, 0})), -1);
  // Full unit classes: d = 1 regardless of the primes.
  EXPECT_EQ(order_two_component_delta(g, comp(g, true, {1, 1})), 1);
  EXPECT_EQ(order_two_component_delta(g, comp(g, true, {0})), 1);
  // Trivial unit classes, exactly one nonzero prime among several: d = 1.
  EXPECT_EQ(order_two_component_delta(g, comp(g, false, {1, 0})), 1);
  EXPECT_EQ(order_two_component_delta(g, comp(g, false, {1, 0, 0})), 1);
  // Trivial unit classes, >= 3 primes with >= 2 nonzero: d = 1.
  EXPECT_EQ(order_two_component_delta(g, comp(g, false, {1, 1, 0})), 1);
  EXPECT_EQ(order_two_component_delta(g, comp(g, false, {1, 1, 1})), 1);
}

TEST(ComponentDelta, RequiresOrderTwo) {
  FiniteAbelianGroup g3 = FiniteAbelianGroup::cyclic(3);
  PrimaryComponentSpec c =
      make_primary_component(g3, 1, {}, {g3.element({1})});
  EXPECT_THROW(order_two_component_delta(g3, c), std::invalid_argument);
}

TEST(MaxDeltaFormula, SinglesUseTheAbsoluteValue) {
  FiniteAbelianGroup g = c2();
  EXPECT_EQ(order_two_max_delta(spec_of({comp(g, false, {1, 1})})), 2);
  EXPECT_EQ(order_two_max_delta(spec_of({comp(g, false, {1})})), 0);
  EXPECT_EQ(order_two_max_delta(spec_of({comp(g, false, {0, 0})})), 1);
  EXPECT_EQ(order_two_max_delta(spec_of({comp(g, true, {1})})), 1);
}

TEST(MaxDeltaFormula, PairsUseTheLargerOfSumsAndSingles) {
  FiniteAbelianGroup g = c2();
  auto d2 = [&] { return comp(g, false, {1, 1}); };
  auto d1 = [&] { return comp(g, true, {1}); };
  auto d0 = [&] { return comp(g, false, {1}); };
  auto dm1 = [&] { return comp(g, false, {0, 0}); };
  EXPECT_EQ(order_two_max_delta(spec_of({d2(), d2()})), 4);
  EXPECT_EQ(order_two_max_delta(spec_of({d2(), d1()})), 3);
  EXPECT_EQ(order_two_max_delta(spec_of({d1(), d1()})), 2);
  EXPECT_EQ(order_two_max_delta(spec_of({d0(), d0()})), 0);
  EXPECT_EQ(order_two_max_delta(spec_of({d0(), d1()})), 1);
  // d + d' = 1 for the pair, but the single |d| = 2 wins.
  EXPECT_EQ(order_two_max_delta(spec_of({d2(), dm1()})), 2);
  EXPECT_EQ(order_two_max_delta(spec_of({dm1(), dm1()})), 1);
  EXPECT_EQ(order_two_max_delta(spec_of({d2(), d2(), d1()})), 4);
}

TEST(MaxDeltaFormula, RequiresOrderTwoAndComponents) {
  FiniteAbelianGroup g3 = FiniteAbelianGroup::cyclic(3);
  TBlockSpec bad = make_tblock_spec(
      g3, {make_primary_component(g3, 1, {}, {g3.element({1})})});
  EXPECT_THROW(order_two_max_delta(bad), std::invalid_argument);
  EXPECT_THROW(order_two_max_delta(make_tblock_spec(c2(), {})),
               std::invalid_argument);
}

TEST(WitnessPairs, EveryReachableGapIsConstructed) {
  FiniteAbelianGroup g = c2();
  struct Case {
    std::vector<PrimaryComponentSpec> comps;
    int gap;
  };
  std::vector<Case> cases;
  cases.push_back({{comp(g, false, {0, 0})}, 1});
  cases.push_back({{comp(g, true, {1})}, 1});
  cases.push_back({{comp(g, false, {1, 1})}, 2});
  cases.push_back({{comp(g, true, {1}), comp(g, true, {1})}, 2});
  cases.push_back({{comp(g, false, {1, 1}), comp(g, true, {1})}, 3});
  cases.push_back({{comp(g, false, {1, 1}), comp(g, false, {1, 1})}, 4});
  for (const Case& c : cases) {
    BlockMonoid m(spec_of(c.comps));
    ASSERT_EQ(order_two_max_delta(m.spec()), c.gap);
    WitnessPair w = order_two_witness_pair(m, c.gap);
    EXPECT_EQ(w.gap, c.gap);
    EXPECT_EQ(w.expected_lengths, (LengthSet{2, 2 + c.gap}));
    EXPECT_TRUE(m.is_atom(w.u1));
    EXPECT_TRUE(m.is_atom(w.u2));
    FactorEngine<BlockMonoid> engine(m);
    EXPECT_EQ(engine.length_set(m.multiply(w.u1, w.u2)), w.expected_lengths);
  }
}

TEST(WitnessPairs, RejectsUnreachableGaps) {
  FiniteAbelianGroup g = c2();
  BlockMonoid m(spec_of({comp(g, false, {1, 1})}));  // formula value 2
  EXPECT_THROW(order_two_witness_pair(m, 3), std::invalid_argument);
  EXPECT_THROW(order_two_witness_pair(m, 0), std::invalid_argument);
  EXPECT_THROW(order_two_witness_pair(m, 5), std::invalid_argument);
}
