/// @file scan_test.cpp
/// @brief Region scans: distance-set aggregation, witnesses, worker
///        determinism, and the descent property.

#include "deltakit/scan.hpp"

#include <gtest/gtest.h>

#include "deltakit/zerosum.hpp"

using namespace deltakit;

namespace {

ScanOutcome<Sequence> scan_cyclic(Coord n, Coord max_len, ScanOptions opt) {
  FiniteAbelianGroup g = FiniteAbelianGroup::cyclic(n);
  ZeroSumMonoid m(g);
  return scan_region(m, m.enumerate_region(max_len), opt);
}

}  // namespace

TEST(ScanRegion, CyclicFourDistanceSetAndCatenary) {
  ScanOptions opt;
  opt.catenary = true;
  ScanOutcome<Sequence> s = scan_cyclic(4, 12, opt);
  EXPECT_EQ(s.delta, (std::vector<Coord>{1, 2}));
  EXPECT_EQ(s.max_delta(), 2);
  EXPECT_EQ(s.max_catenary, 4);
  EXPECT_TRUE(s.catenary_computed);
  EXPECT_TRUE(s.min_equals_gcd());
  EXPECT_TRUE(s.delta_is_interval());
  EXPECT_GT(s.element_count, 0u);
}

TEST(ScanRegion, WitnessPerGapWithMinimalNorm) {
  ScanOptions opt;
  ScanOutcome<Sequence> s = scan_cyclic(4, 12, opt);
  ASSERT_EQ(s.witnesses.size(), 2u);
  EXPECT_EQ(s.witnesses[0].gap, 1);
  EXPECT_EQ(s.witnesses[1].gap, 2);
  for (const auto& w : s.witnesses) {
    EXPECT_EQ(max_gap(w.lengths), w.gap);
    EXPECT_EQ(w.norm, w.element.length());
    EXPECT_EQ(s.min_norm_by_max_gap.at(w.gap), w.norm);
  }
  // The classical minimal witness over C4: 1^4 * 3^4 has lengths {2, 4}.
  EXPECT_EQ(s.min_norm_by_max_gap.at(2), 8);
}

TEST(ScanRegion, WorkerCountDoesNotChangeTheOutcome) {
  ScanOptions one;
  one.workers = 1;
  one.catenary = true;
  ScanOptions four;
  four.workers = 4;
  four.catenary = true;
  ScanOutcome<Sequence> a = scan_cyclic(5, 10, one);
  ScanOutcome<Sequence> b = scan_cyclic(5, 10, four);
  EXPECT_EQ(a.delta, b.delta);
  EXPECT_EQ(a.max_catenary, b.max_catenary);
  EXPECT_EQ(a.element_count, b.element_count);
  ASSERT_EQ(a.witnesses.size(), b.witnesses.size());
  for (std::size_t i = 0; i < a.witnesses.size(); ++i) {
    EXPECT_EQ(a.witnesses[i].element, b.witnesses[i].element);
    EXPECT_EQ(a.witnesses[i].lengths, b.witnesses[i].lengths);
  }
  EXPECT_EQ(a.min_norm_by_max_gap, b.min_norm_by_max_gap);
}

TEST(ScanRegion, CatenaryOffLeavesFieldUncomputed) {
  ScanOptions opt;
  ScanOutcome<Sequence> s = scan_cyclic(4, 8, opt);
  EXPECT_FALSE(s.catenary_computed);
  EXPECT_EQ(s.max_catenary, 0);
}

TEST(ScanRegion, TrivialAndTwoElementGroupsHaveNoGaps) {
  ScanOptions opt;
  opt.catenary = true;
  ScanOutcome<Sequence> c1 = scan_cyclic(1, 6, opt);
  EXPECT_TRUE(c1.delta.empty());
  ScanOutcome<Sequence> c2 = scan_cyclic(2, 6, opt);
  EXPECT_TRUE(c2.delta.empty());
  EXPECT_LE(c2.max_catenary, 2);
}

TEST(ScanRegion, DescentPropertyHoldsOnCyclicScan) {
  ScanOptions opt;
  ScanOutcome<Sequence> s = scan_cyclic(6, 18, opt);
  EXPECT_EQ(s.max_delta(), 4);
  EXPECT_TRUE(s.descent_property_holds(2));
}

TEST(ScanRegion, EmptyRegionYieldsEmptyOutcome) {
  FiniteAbelianGroup g = FiniteAbelianGroup::cyclic(3);
  ZeroSumMonoid m(g);
  ScanOutcome<Sequence> s = scan_region(m, {}, ScanOptions{});
  EXPECT_TRUE(s.delta.empty());
  EXPECT_EQ(s.element_count, 0u);
}
