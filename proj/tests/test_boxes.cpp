#include <gtest/gtest.h>

#include "oracles.hpp"
#include "rect_escape/boxes.hpp"
#include "rect_escape/generate.hpp"

namespace re = rect_escape;
using re::Box3;
using re::Direction3;

namespace {

re::Instance3 box_corpus(std::uint64_t seed, bool disjoint) {
  re::RandomBoxParams p;
  p.n = 1 + static_cast<int>(seed % 6);
  p.coord_max = 6;
  p.max_side = 3;
  p.d = 2 + static_cast<int>(seed % 2);
  p.disjoint = disjoint;
  if (!disjoint) p.max_input_density = p.d - 1;
  return re::random_box_instance(p, seed);
}

std::vector<Box3> stretched_all(const re::Instance3& inst, const re::Assignment3& a) {
  std::vector<Box3> out;
  for (const Box3& b : inst.boxes) {
    const auto& c = a.at(b.id);
    out.push_back(c ? oracle::stretched3(b, inst, *c) : b);
  }
  return out;
}

long long ceil_div(long long a, long long b) { return (a + b - 1) / b; }

}  // namespace

TEST(Boxes, DirectionNames) {
  for (Direction3 dir : re::kAllDirections3) {
    EXPECT_EQ(re::parse_direction3(re::to_string(dir)), dir);
    EXPECT_EQ(re::direction3(re::axis_of(dir), re::is_positive(dir)), dir);
  }
  EXPECT_FALSE(re::parse_direction3("w+").has_value());
}

TEST(Boxes, ProjectionDropsTheAxis) {
  const std::vector<Box3> cube = {{7, {1, 2, 3}, {2, 3, 4}}};
  const auto z = re::project_boxes(cube, 2);
  EXPECT_EQ(z[0].id, 7);
  EXPECT_EQ(z[0].x_min, 1);
  EXPECT_EQ(z[0].y_min, 2);
  EXPECT_EQ(z[0].x_max, 2);
  EXPECT_EQ(z[0].y_max, 3);
  const auto x = re::project_boxes(cube, 0);
  EXPECT_EQ(x[0].x_min, 2);
  EXPECT_EQ(x[0].y_min, 3);
  const auto y = re::project_boxes(cube, 1);
  EXPECT_EQ(y[0].x_min, 1);
  EXPECT_EQ(y[0].y_min, 3);
}

// Two boxes' footprints overlap iff some translate of one along the axis
// overlaps the other.
TEST(Boxes, ProjectionOverlapMatchesTranslates) {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto inst = box_corpus(seed, false);
    for (int axis = 0; axis < 3; ++axis) {
      const auto feet = re::project_boxes(inst.boxes, axis);
      for (std::size_t i = 0; i < inst.boxes.size(); ++i) {
        for (std::size_t j = 0; j < inst.boxes.size(); ++j) {
          Box3 shifted = inst.boxes[i];
          shifted.lo[axis] = inst.region.lo[axis];
          shifted.hi[axis] = inst.region.hi[axis];
          ASSERT_EQ(feet[i].overlaps(feet[j]), shifted.overlaps(inst.boxes[j]));
        }
      }
    }
  }
}

TEST(Boxes, DensityMatchesLattice) {
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    const auto inst = box_corpus(seed, seed % 3 == 0);
    re::SplitMix64 rng(seed + 99);
    re::Assignment3 a;
    for (const Box3& b : inst.boxes) {
      const auto pick = rng.uniform_int(0, 6);
      a[b.id] = pick == 6 ? re::Choice3{} : re::Choice3{re::kAllDirections3[pick]};
    }
    std::array<re::Coord, 3> at{};
    const int ref = oracle::lattice_density3(inst, stretched_all(inst, a), &at);
    const auto got = re::density_of(inst, a);
    ASSERT_EQ(got.max_density, ref) << seed;
    if (ref > 0) {
      ASSERT_EQ(got.witness, at);
    }
  }
}

TEST(Boxes, StuckMatchesSoloOracle) {
  for (std::uint64_t seed = 1; seed <= 150; ++seed) {
    auto inst = box_corpus(seed, false);
    for (int axis = 0; axis < 3; ++axis) {
      const auto stuck = re::stuck_boxes(inst, axis);
      for (std::size_t i = 0; i < inst.boxes.size(); ++i) {
        bool both = true;
        for (bool pos : {true, false}) {
          std::vector<Box3> body = inst.boxes;
          body[i] = oracle::stretched3(inst.boxes[i], inst, re::direction3(axis, pos));
          both = both && oracle::lattice_density3(inst, body) > inst.d;
        }
        ASSERT_EQ(stuck.count(inst.boxes[i].id) == 1, both) << seed;
      }
    }
  }
}

TEST(Boxes, SandwichedBoxIsStuck) {
  re::Instance3 inst;
  inst.region.hi = {4, 4, 6};
  inst.d = 1;
  inst.boxes = {{1, {1, 1, 2}, {2, 2, 3}}, {2, {0, 0, 0}, {4, 4, 1}}, {3, {0, 0, 5}, {4, 4, 6}}};
  EXPECT_EQ(re::stuck_boxes(inst, 2).count(1), 1u);
  EXPECT_EQ(re::stuck_boxes(inst, 0).count(1), 0u);
}

TEST(RectMis, ExactMatchesSubsets) {
  re::RandomRectParams p;
  p.coord_max = 10;
  p.max_side = 5;
  p.d = 10;
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    p.n = 1 + static_cast<int>(seed % 10);
    const auto inst = re::random_rect_instance(p, seed);
    const auto& rs = inst.rects;
    int best = 0;
    for (std::uint32_t mask = 0; mask < (1u << rs.size()); ++mask) {
      bool ok = true;
      for (std::size_t i = 0; i < rs.size() && ok; ++i) {
        for (std::size_t j = i + 1; j < rs.size() && ok; ++j) {
          if ((mask >> i & 1u) && (mask >> j & 1u) && rs[i].overlaps(rs[j])) ok = false;
        }
      }
      if (ok) best = std::max(best, __builtin_popcount(mask));
    }
    const auto mis = re::rect_mis_exact(rs);
    ASSERT_EQ(static_cast<int>(mis.size()), best);
    const auto greedy = re::rect_mis_greedy(rs);
    ASSERT_LE(greedy.size(), mis.size());
    for (const auto* pick : {&mis, &greedy}) {
      for (const auto& a : rs) {
        for (const auto& b : rs) {
          if (a.id < b.id && pick->count(a.id) && pick->count(b.id)) {
            ASSERT_FALSE(a.overlaps(b));
          }
        }
      }
    }
  }
}

TEST(RectMis, CapAndTrivialShapes) {
  std::vector<re::Rect> clique, apart;
  for (int i = 0; i < 5; ++i) {
    clique.push_back({i + 1, 0, 0, 3 + i, 3});
    apart.push_back({i + 1, 2 * i, 0, 2 * i + 1, 1});
  }
  EXPECT_EQ(re::rect_mis_exact(clique).size(), 1u);
  EXPECT_EQ(re::rect_mis_exact(apart).size(), 5u);
  std::vector<re::Rect> many(17, re::Rect{0, 0, 0, 1, 1});
  for (int i = 0; i < 17; ++i) many[i].id = i + 1;
  EXPECT_THROW(re::rect_mis_exact(many), re::EscapeError);
}

TEST(BoxesGeneral, FeasibleAndWithinBound) {
  for (std::uint64_t seed = 1; seed <= 150; ++seed) {
    const auto inst = box_corpus(seed, false);
    const auto sol = re::solve_boxes_general(inst, re::exact_mis_plugin());
    ASSERT_LE(oracle::lattice_density3(inst, stretched_all(inst, sol.assignment)), inst.d);
    const int opt = oracle::box_rho(inst);
    ASSERT_GE(sol.extended_count, ceil_div(opt, 12LL * inst.d)) << seed;
    ASSERT_EQ(sol.claimed_ratio, std::to_string(12 * inst.d));
    const auto greedy = re::solve_boxes_general(inst, re::greedy_mis_plugin());
    ASSERT_TRUE(re::is_feasible(inst, greedy.assignment));
    ASSERT_EQ(greedy.claimed_ratio, "heuristic");
  }
}

TEST(BoxesGeneral, FootprintDisjointBoxesAllEscape) {
  re::Instance3 inst;
  inst.region.hi = {10, 10, 10};
  inst.d = 3;
  for (int i = 0; i < 4; ++i) inst.boxes.push_back({i + 1, {2 * i, 0, 2 * i}, {2 * i + 1, 1, 2 * i + 1}});
  EXPECT_EQ(re::solve_boxes_general(inst, re::exact_mis_plugin()).extended_count, 4);
}

TEST(BoxesGeneral, EverythingStuckGivesNothing) {
  // A slab at density d sits on every side of the middle box.
  re::Instance3 inst;
  inst.region.hi = {3, 3, 3};
  inst.d = 1;
  inst.boxes.push_back({1, {1, 1, 1}, {2, 2, 2}});
  re::Id next = 2;
  for (int a = 0; a < 3; ++a) {
    for (re::Coord at : {0, 2}) {
      Box3 b{next++, {1, 1, 1}, {2, 2, 2}};
      b.lo[a] = at;
      b.hi[a] = at + 1;
      inst.boxes.push_back(b);
    }
  }
  // The six caps themselves escape, so only the middle box is checked.
  const auto sol = re::solve_boxes_general(inst, re::exact_mis_plugin());
  EXPECT_FALSE(sol.assignment.at(1).has_value());
  for (int a = 0; a < 3; ++a) EXPECT_EQ(re::stuck_boxes(inst, a).count(1), 1u);
}

TEST(BoxesDisjoint, FeasibleAndWithinBound) {
  for (std::uint64_t seed = 1; seed <= 150; ++seed) {
    const auto inst = box_corpus(seed, true);
    const auto sol = re::solve_boxes_disjoint(inst, re::exact_mis_plugin());
    ASSERT_LE(oracle::lattice_density3(inst, stretched_all(inst, sol.assignment)), inst.d);
    const int opt = oracle::box_rho(inst);
    ASSERT_GE(6.0 * inst.d * sol.extended_count, static_cast<double>(opt)) << seed;
  }
}

TEST(BoxesDisjoint, StackedBoxesEscapeSideways) {
  re::Instance3 inst;
  inst.region.hi = {2, 2, 10};
  inst.d = 3;
  for (int i = 0; i < 5; ++i) inst.boxes.push_back({i + 1, {0, 0, 2 * i}, {1, 1, 2 * i + 1}});
  const auto sol = re::solve_boxes_disjoint(inst, re::exact_mis_plugin());
  // Sideways the slabs stay apart, so every box escapes along x or y.
  EXPECT_EQ(sol.extended_count, 5);
  EXPECT_TRUE(re::is_feasible(inst, sol.assignment));
  for (const auto& [id, c] : sol.assignment) {
    ASSERT_TRUE(c.has_value());
    EXPECT_NE(re::axis_of(*c), 2);
  }
  inst.boxes.push_back({9, {0, 0, 0}, {1, 1, 1}});
  EXPECT_THROW(re::solve_boxes_disjoint(inst, re::exact_mis_plugin()), re::EscapeError);
}

// Feasible single-axis solutions never stack more than 2d footprints.
TEST(BoxesGeneral, AxisSolutionsHaveShallowFootprints) {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto inst = box_corpus(seed, false);
    re::SplitMix64 rng(seed);
    for (int trial = 0; trial < 40; ++trial) {
      const int axis = static_cast<int>(rng.uniform_int(0, 2));
      re::Assignment3 a;
      std::vector<re::Rect> movers;
      for (const Box3& b : inst.boxes) {
        const auto pick = rng.uniform_int(0, 2);
        if (pick == 2) {
          a[b.id] = std::nullopt;
        } else {
          a[b.id] = re::direction3(axis, pick == 0);
          movers.push_back(re::project_boxes({b}, axis)[0]);
        }
      }
      if (!re::is_feasible(inst, a)) continue;
      ASSERT_LE(re::max_density(movers).max_density, 2 * inst.d);
    }
  }
}
