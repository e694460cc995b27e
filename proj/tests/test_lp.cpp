#include <gmpxx.h>
#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "rect_escape/generate.hpp"
#include "rect_escape/lp.hpp"

namespace re = rect_escape;
using re::Direction;

namespace {

// Exact rational simplex with Bland's rule; b >= 0 so the slack basis is a
// feasible start. Returns the optimum of max c.x s.t. Ax <= b, x >= 0.
mpq_class rational_optimum(const re::DenseLP& lp) {
  const std::size_t m = lp.b.size(), n = lp.c.size();
  std::vector<std::vector<mpq_class>> t(m + 1, std::vector<mpq_class>(n + m + 1));
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) t[i][j] = lp.a[i][j];
    t[i][n + i] = 1;
    t[i][n + m] = lp.b[i];
    basis[i] = n + i;
  }
  for (std::size_t j = 0; j < n; ++j) t[m][j] = -lp.c[j];
  while (true) {
    std::size_t s = n + m;
    for (std::size_t j = 0; j < n + m; ++j) {
      if (t[m][j] < 0) {
        s = j;
        break;
      }
    }
    if (s == n + m) return t[m][n + m];
    std::size_t r = m;
    mpq_class best;
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][s] <= 0) continue;
      mpq_class ratio = t[i][n + m] / t[i][s];
      if (r == m || ratio < best || (ratio == best && basis[i] < basis[r])) {
        best = ratio;
        r = i;
      }
    }
    if (r == m) throw std::runtime_error("unbounded");
    const mpq_class p = t[r][s];
    for (auto& v : t[r]) v /= p;
    for (std::size_t i = 0; i <= m; ++i) {
      if (i == r || t[i][s] == 0) continue;
      const mpq_class f = t[i][s];
      for (std::size_t j = 0; j <= n + m; ++j) t[i][j] -= f * t[r][j];
    }
    basis[r] = s;
  }
}

re::Instance lp_corpus(std::uint64_t seed) {
  re::RandomRectParams p;
  p.n = 1 + static_cast<int>(seed % 6);
  p.coord_max = 10;
  p.max_side = 4;
  p.d = 2 + static_cast<int>(seed % 2);
  p.max_input_density = p.d - 1;
  return re::random_rect_instance(p, seed);
}

}  // namespace

TEST(Simplex, TextbookOptimum) {
  re::DenseLP lp;
  lp.a = {{1, 2}, {3, 1}};
  lp.b = {4, 6};
  lp.c = {1, 1};
  const auto r = re::simplex_maximize(lp);
  EXPECT_NEAR(r.objective, 2.8, 1e-9);
  EXPECT_NEAR(r.x[0], 1.6, 1e-9);
  EXPECT_NEAR(r.x[1], 1.2, 1e-9);
  EXPECT_LE(r.max_residual, re::kCertifyTol);
}

TEST(Simplex, AgreesWithRationalOracleOnRandomPackings) {
  re::SplitMix64 rng(5);
  for (int round = 0; round < 200; ++round) {
    const std::size_t m = 1 + rng.uniform_int(0, 7), n = 1 + rng.uniform_int(0, 7);
    re::DenseLP lp;
    lp.a.assign(m, std::vector<double>(n, 0.0));
    for (auto& row : lp.a) {
      for (auto& v : row) v = static_cast<double>(rng.uniform_int(0, 3));
    }
    // A bounding row keeps every instance bounded.
    lp.a.push_back(std::vector<double>(n, 1.0));
    for (std::size_t i = 0; i <= m; ++i) lp.b.push_back(static_cast<double>(rng.uniform_int(0, 6)));
    for (std::size_t j = 0; j < n; ++j) lp.c.push_back(static_cast<double>(rng.uniform_int(1, 4)));
    const auto r = re::simplex_maximize(lp);
    ASSERT_NEAR(r.objective, rational_optimum(lp).get_d(), 1e-7) << round;
    ASSERT_LE(r.max_residual, re::kCertifyTol);
  }
}

TEST(Lp, ModelRowsMatchBands) {
  re::Instance inst;
  inst.region = {0, 0, 4, 4};
  inst.d = 2;
  inst.rects = {{1, 1, 1, 2, 2}};
  const auto model = re::build_lp(inst);
  // 3x3 compressed cells; the centre is the body, every other row/column
  // cell in line with it is covered by one band.
  ASSERT_EQ(model.points.size(), 9u);
  int with_vars = 0;
  for (const auto& pc : model.points) {
    with_vars += !pc.vars.empty();
    if (pc.point == re::GridPoint{1, 1}) {
      EXPECT_EQ(pc.input_density, 1);
      EXPECT_EQ(pc.rhs, 1);
    }
    if (pc.point == re::GridPoint{1, 2}) {
      ASSERT_EQ(pc.vars.size(), 1u);
      EXPECT_EQ(pc.vars[0], re::lp_var(0, Direction::kUp));
    }
  }
  EXPECT_EQ(with_vars, 4);
}

TEST(Lp, InfeasibleInputThrows) {
  re::Instance inst;
  inst.region = {0, 0, 4, 4};
  inst.d = 1;
  inst.rects = {{1, 0, 0, 2, 2}, {2, 1, 1, 3, 3}};
  try {
    re::build_lp(inst);
    FAIL();
  } catch (const re::EscapeError& e) {
    EXPECT_EQ(e.kind(), re::ErrorKind::kInfeasibleInput);
  }
}

TEST(Lp, RelaxationBoundsTheIntegralOptimum) {
  for (std::uint64_t seed = 1; seed <= 120; ++seed) {
    const auto inst = lp_corpus(seed);
    const auto model = re::build_lp(inst);
    const auto frac = re::solve_lp(model);
    ASSERT_GE(frac.objective_value + 1e-7, oracle::unpruned_rho(inst)) << seed;
    ASSERT_NEAR(frac.objective_value, rational_optimum(re::to_dense(model, nullptr)).get_d(),
                1e-7);
    for (std::size_t i = 0; i < model.rect_ids.size(); ++i) {
      double sum = 0.0;
      for (Direction dir : re::kAllDirections) sum += frac.value(i, dir);
      ASSERT_LE(sum, 1.0 + 1e-7);
    }
  }
}

// Per rect, P(dir) = (1-eps) r[dir] and P(None) = the rest, checked by a
// binomial 3-sigma band for every outcome.
TEST(Rounding, FrequenciesFollowScaledValues) {
  re::FractionalSolution frac;
  frac.rect_ids = {1, 2};
  frac.values = {0.5, 0.25, 0.0, 0.25, 0.1, 0.0, 0.3, 0.0};
  const double eps = 0.2;
  const int draws = 200000;
  std::vector<std::array<int, 5>> counts(2, std::array<int, 5>{});
  re::SplitMix64 rng(77);
  for (int t = 0; t < draws; ++t) {
    const auto a = re::randomized_round(frac, eps, rng);
    for (std::size_t i = 0; i < 2; ++i) {
      const auto& c = a.at(frac.rect_ids[i]);
      ++counts[i][c ? re::index_of(*c) : 4];
    }
  }
  for (std::size_t i = 0; i < 2; ++i) {
    double rest = 1.0;
    for (Direction dir : re::kAllDirections) {
      const double p = (1.0 - eps) * frac.value(i, dir);
      rest -= p;
      const double sigma = std::sqrt(draws * p * (1.0 - p));
      EXPECT_LE(std::abs(counts[i][re::index_of(dir)] - draws * p), 3.0 * sigma + 1e-9);
    }
    const double sigma = std::sqrt(draws * rest * (1.0 - rest));
    EXPECT_LE(std::abs(counts[i][4] - draws * rest), 3.0 * sigma);
  }
}

TEST(Rounding, EpsilonOutOfRangeThrows) {
  re::FractionalSolution frac;
  re::SplitMix64 rng(1);
  EXPECT_THROW(re::randomized_round(frac, 0.0, rng), re::EscapeError);
  EXPECT_THROW(re::randomized_round(frac, 0.5, rng), re::EscapeError);
}

TEST(Rounding, SolveReturnsOnlyFeasibleAssignments) {
  for (std::uint64_t seed = 1; seed <= 80; ++seed) {
    const auto inst = lp_corpus(seed);
    re::RoundingParams params;
    params.rng_seed = seed;
    params.trials = 8;
    const auto out = re::randomized_solve(inst, params);
    ASSERT_EQ(out.trial_max_density.size(), 8u);
    int feasible = 0;
    for (int dens : out.trial_max_density) feasible += dens <= inst.d;
    ASSERT_EQ(feasible, out.feasible_trials);
    if (out.solution) {
      ASSERT_TRUE(re::is_feasible(inst, out.solution->assignment));
      ASSERT_EQ(out.trial_max_density[out.best_trial] <= inst.d, true);
    }
    // Same seed, same outcome.
    const auto again = re::randomized_solve(inst, params);
    ASSERT_EQ(again.trial_max_density, out.trial_max_density);
  }
}

TEST(Preconditions, AlphaAndThreshold) {
  re::Instance inst;
  inst.region = {0, 0, 4, 4};
  inst.d = 4;
  inst.rects = {{1, 0, 0, 2, 2}, {2, 1, 1, 3, 3}};
  const double eps = 0.25;
  const auto rep = re::check_preconditions(inst, eps);
  // Deepest cell holds 2 of 4.
  EXPECT_DOUBLE_EQ(rep.alpha, 0.5);
  const double shape = std::log(2.0) * (1.0 - eps * 0.5);
  EXPECT_NEAR(rep.d_threshold, 9.0 * shape / (eps * eps * 0.25), 1e-9);
  EXPECT_FALSE(rep.satisfied);
  EXPECT_NEAR(rep.effective_constant, 4.0 * eps * eps * 0.25 / shape, 1e-12);
  for (std::size_t i = 0; i < rep.mu.size(); ++i) {
    EXPECT_NEAR(rep.delta[i], 4.0 / rep.mu[i] - 1.0, 1e-12);
    EXPECT_GE(rep.mu[i], (1.0 - eps) * 4.0 - 1e-12);
  }
}

TEST(Preconditions, LargeDSatisfies) {
  re::Instance inst;
  inst.region = {0, 0, 4, 4};
  inst.d = 5000;
  inst.rects = {{1, 0, 0, 2, 2}};
  const auto rep = re::check_preconditions(inst, 0.3);
  EXPECT_TRUE(rep.satisfied);
  EXPECT_GE(rep.effective_constant, 9.0);
}
