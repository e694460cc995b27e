#include <gtest/gtest.h>

#include "oracles.hpp"
#include "rect_escape/generate.hpp"
#include "rect_escape/squares.hpp"

namespace re = rect_escape;
using re::Direction;

namespace {

re::GridInstance grid_corpus(std::uint64_t seed, int max_n) {
  re::RandomGridParams p;
  p.m = 2 + static_cast<int>(seed % 5);
  p.n = 1 + static_cast<int>(seed % max_n);
  p.d = 2;
  return re::random_grid_instance(p, seed);
}

}  // namespace

TEST(Grid, RectViewPlacesRowOneAtTheBottom) {
  re::GridInstance g;
  g.m = 3;
  g.squares = {{5, 1, 2}};
  const auto inst = re::to_rect_instance(g);
  EXPECT_EQ(inst.region.x_min, 1);
  EXPECT_EQ(inst.region.x_max, 4);
  ASSERT_EQ(inst.rects.size(), 1u);
  EXPECT_EQ(inst.rects[0].id, 5);
  EXPECT_EQ(inst.rects[0].x_min, 2);
  EXPECT_EQ(inst.rects[0].y_min, 1);
  EXPECT_EQ(inst.rects[0].x_max, 3);
  EXPECT_EQ(inst.rects[0].y_max, 2);
}

TEST(Grid, ValidationCatchesBadSquares) {
  re::GridInstance g;
  g.m = 3;
  g.squares = {{1, 4, 1}};
  EXPECT_THROW(re::validate(g), re::EscapeError);
  g.squares = {{1, 1, 1}, {1, 2, 2}};
  EXPECT_THROW(re::validate(g), re::EscapeError);
  g.squares = {{1, 1, 1}, {2, 1, 1}, {3, 1, 1}};
  EXPECT_NO_THROW(re::validate(g));
  EXPECT_EQ(re::input_multiplicity(g), 3);
  try {
    re::two_approx(g);
    FAIL();
  } catch (const re::EscapeError& e) {
    EXPECT_EQ(e.kind(), re::ErrorKind::kInfeasibleInput);
  }
}

TEST(Grid, DensityAgreesWithLatticeOnTheRectView) {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const auto g = grid_corpus(seed, 10);
    const auto inst = re::to_rect_instance(g);
    re::SplitMix64 rng(seed + 1000);
    re::GridAssignment a;
    std::vector<re::Rect> body;
    for (std::size_t i = 0; i < g.squares.size(); ++i) {
      const auto pick = rng.uniform_int(0, 4);
      if (pick == 4) {
        a[g.squares[i].id] = std::nullopt;
        body.push_back(inst.rects[i]);
      } else {
        a[g.squares[i].id] = re::kAllDirections[pick];
        body.push_back(oracle::stretched(inst.rects[i], inst.region, re::kAllDirections[pick]));
      }
    }
    const auto got = re::grid_density(g, a);
    const auto ref = oracle::lattice_density(inst.region, body);
    ASSERT_EQ(got.max_density, ref.max);
    ASSERT_EQ(got.witness, ref.at);
  }
}

TEST(Grid, AxisSolverIsOptimalForItsAxis) {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const auto g = grid_corpus(seed, 7);
    const auto inst = re::to_rect_instance(g);
    for (re::Axis axis : {re::Axis::kVertical, re::Axis::kHorizontal}) {
      const auto sol = re::axis_optimal_squares(g, axis);
      ASSERT_LE(re::grid_density(g, sol.assignment).max_density, g.d);
      const auto dirs = re::directions_on(axis);
      const std::vector<Direction> opts(dirs.begin(), dirs.end());
      ASSERT_EQ(sol.extended_count,
                oracle::enumerate_rho(inst, [&](std::size_t) { return opts; }))
          << seed;
    }
  }
}

TEST(Backtracking, MaximizeMatchesUnprunedEnumeration) {
  for (std::uint64_t seed = 1; seed <= 80; ++seed) {
    const auto g = grid_corpus(seed, 6);
    const auto res = re::exact_backtracking(g, re::BacktrackMode::kMaximize);
    ASSERT_EQ(res.verdict, re::Verdict::kYes);
    const int opt = oracle::unpruned_rho(re::to_rect_instance(g));
    ASSERT_EQ(res.rho, opt) << seed;
    ASSERT_EQ(re::extended_count(*res.witness), opt);
    ASSERT_LE(re::grid_density(g, *res.witness).max_density, g.d);
    const auto all = re::exact_backtracking(g, re::BacktrackMode::kAll);
    ASSERT_EQ(all.verdict == re::Verdict::kYes,
              opt == static_cast<int>(g.squares.size()));
    if (all.witness) {
      ASSERT_EQ(re::extended_count(*all.witness), static_cast<int>(g.squares.size()));
      ASSERT_LE(re::grid_density(g, *all.witness).max_density, g.d);
    }
  }
}

TEST(Backtracking, MasksRestrictChoices) {
  re::GridInstance g;
  g.m = 3;
  g.d = 1;
  g.squares = {{1, 2, 2}};
  std::map<re::Id, std::uint8_t> allowed = {{1, re::allow_only(Direction::kLeft)}};
  const auto res = re::exact_backtracking(g, re::BacktrackMode::kAll, re::kDefaultNodeBudget,
                                          allowed);
  ASSERT_EQ(res.verdict, re::Verdict::kYes);
  EXPECT_EQ(res.witness->at(1), Direction::kLeft);
  // A square walled in on its left by another with no way out.
  g.squares.push_back({2, 2, 1});
  allowed[2] = re::kAllowNone;
  EXPECT_EQ(re::exact_backtracking(g, re::BacktrackMode::kAll, re::kDefaultNodeBudget, allowed)
                .verdict,
            re::Verdict::kNo);
  const auto best =
      re::exact_backtracking(g, re::BacktrackMode::kMaximize, re::kDefaultNodeBudget, allowed);
  EXPECT_EQ(best.verdict, re::Verdict::kNo);
  EXPECT_EQ(best.rho, 0);
  EXPECT_FALSE(best.witness.has_value());
}

TEST(Backtracking, BudgetExhaustionIsInconclusive) {
  re::RandomGridParams p;
  p.m = 6;
  p.n = 12;
  const auto g = re::random_grid_instance(p, 4);
  EXPECT_EQ(re::exact_backtracking(g, re::BacktrackMode::kMaximize, 2).verdict,
            re::Verdict::kInconclusive);
}

TEST(TwoApprox, HalfOfOptimum) {
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    const auto g = grid_corpus(seed, 10);
    const auto sol = re::two_approx(g);
    ASSERT_LE(re::grid_density(g, sol.assignment).max_density, g.d);
    const int rho = re::exact_backtracking(g, re::BacktrackMode::kMaximize).rho;
    ASSERT_GE(2 * sol.extended_count, rho) << seed;
    ASSERT_EQ(sol.claimed_ratio, "2");
  }
}

TEST(FptGrid, AgreesWithBacktracking) {
  for (std::uint64_t seed = 1; seed <= 120; ++seed) {
    const auto g = grid_corpus(seed, 8);
    const int rho = re::exact_backtracking(g, re::BacktrackMode::kMaximize).rho;
    const int n = static_cast<int>(g.squares.size());
    for (int k = 0; k <= n; ++k) {
      const auto tr = re::fpt_solve_grid(g, k);
      ASSERT_EQ(tr.verdict == re::Verdict::kYes, rho >= k) << seed << " k " << k;
      if (tr.witness) {
        ASSERT_LE(re::grid_density(g, *tr.witness).max_density, g.d);
      }
    }
  }
}
