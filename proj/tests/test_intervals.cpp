#include <gtest/gtest.h>

#include <map>

#include "oracles.hpp"
#include "rect_escape/intervals.hpp"
#include "rect_escape/rng.hpp"

namespace re = rect_escape;
using re::Interval;

namespace {

std::vector<Interval> random_intervals(re::SplitMix64& rng, int n, re::Coord span) {
  std::vector<Interval> out;
  for (int i = 0; i < n; ++i) {
    const re::Coord lo = rng.uniform_int(0, span - 1);
    const re::Coord len = rng.uniform_int(1, span / 2);
    out.push_back({i + 1, lo, lo + len});
  }
  return out;
}

}  // namespace

TEST(Project, TakesTheRequestedExtent) {
  std::vector<re::Rect> rs = {{4, 1, 2, 3, 7}};
  EXPECT_EQ(re::project(rs, re::ProjectionAxis::kX)[0], (Interval{4, 1, 3}));
  EXPECT_EQ(re::project(rs, re::ProjectionAxis::kY)[0], (Interval{4, 2, 7}));
  EXPECT_EQ(re::perpendicular(re::Axis::kVertical), re::ProjectionAxis::kX);
}

TEST(Depth, HalfOpenEndpointsDoNotStack) {
  std::vector<Interval> v = {{1, 0, 2}, {2, 2, 4}, {3, 1, 3}};
  EXPECT_EQ(re::interval_depth(v), 2);
  EXPECT_EQ(re::interval_depth(std::vector<Interval>{}), 0);
}

TEST(Mis, MatchesSubsetSearchAndPiercing) {
  re::SplitMix64 rng(11);
  for (int round = 0; round < 1000; ++round) {
    const auto ivs = random_intervals(rng, 1 + round % 12, 30);
    const auto mis = re::max_independent_set(ivs);
    ASSERT_EQ(static_cast<int>(mis.size()), oracle::subset_k_fold(ivs, 1));
    ASSERT_EQ(static_cast<int>(mis.size()), oracle::min_piercing(ivs));
    const auto pts = re::piercing_points(ivs);
    ASSERT_EQ(pts.size(), mis.size());
    for (const Interval& iv : ivs) {
      bool hit = false;
      for (re::Coord p : pts) hit = hit || (iv.lo <= p && p < iv.hi);
      ASSERT_TRUE(hit);
    }
  }
}

TEST(KFold, MatchesSubsetSearch) {
  re::SplitMix64 rng(12);
  for (int round = 0; round < 600; ++round) {
    const auto ivs = random_intervals(rng, 1 + round % 13, 25);
    const int k = 1 + round % 4;
    const auto pack = re::k_fold_packing(ivs, k);
    ASSERT_EQ(static_cast<int>(pack.selected.size()), oracle::subset_k_fold(ivs, k));
  }
}

TEST(KFold, ColorClassesPartitionTheSelection) {
  re::SplitMix64 rng(13);
  for (int round = 0; round < 500; ++round) {
    const auto ivs = random_intervals(rng, 2 + round % 20, 40);
    const int k = 1 + round % 4;
    const auto pack = re::k_fold_packing(ivs, k);
    std::map<re::Id, Interval> by_id;
    for (const Interval& iv : ivs) by_id[iv.id] = iv;
    std::vector<Interval> chosen;
    for (re::Id id : pack.selected) chosen.push_back(by_id[id]);
    ASSERT_TRUE(oracle::depth_at_most(chosen, k));
    ASSERT_LE(static_cast<int>(pack.color_classes.size()), k);
    std::set<re::Id> seen;
    for (const auto& cls : pack.color_classes) {
      for (std::size_t i = 0; i < cls.size(); ++i) {
        ASSERT_TRUE(seen.insert(cls[i]).second);
        for (std::size_t j = i + 1; j < cls.size(); ++j) {
          ASSERT_FALSE(by_id[cls[i]].overlaps(by_id[cls[j]]));
        }
      }
    }
    ASSERT_EQ(seen, pack.selected);
  }
}

// First-fit in acceptance order would open a third class here.
TEST(KFold, ColoringNeedsLeftEndpointOrder) {
  std::vector<Interval> v = {{1, 0, 2}, {2, 1, 4}, {3, 5, 6}, {4, 3, 10}};
  const auto pack = re::k_fold_packing(v, 2);
  EXPECT_EQ(pack.selected.size(), 4u);
  EXPECT_EQ(pack.color_classes.size(), 2u);
}

TEST(KFold, RejectsNonPositiveK) {
  std::vector<Interval> v = {{1, 0, 2}};
  EXPECT_THROW(re::k_fold_packing(v, 0), re::EscapeError);
}

TEST(KFold, LosesAtMostOneInD) {
  re::SplitMix64 rng(14);
  for (int round = 0; round < 500; ++round) {
    const auto ivs = random_intervals(rng, 1 + round % 14, 20);
    for (int d = 2; d <= 4; ++d) {
      const double lower = oracle::subset_k_fold(ivs, d - 1);
      const double upper = oracle::subset_k_fold(ivs, d);
      ASSERT_GE(lower + 1e-9, upper * (1.0 - 1.0 / d));
    }
  }
}
