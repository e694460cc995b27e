// Dense primal simplex for  max c.x  s.t.  A x <= b, x >= 0  with b >= 0,
// so the all-slack basis is feasible and no phase one is needed.
#ifndef RECT_ESCAPE_SIMPLEX_HPP_
#define RECT_ESCAPE_SIMPLEX_HPP_

#include <cmath>
#include <limits>
#include <vector>

#include "rect_escape/geometry.hpp"

namespace rect_escape {

struct DenseLP {
  std::vector<std::vector<double>> a;  // m rows of n coefficients
  std::vector<double> b;               // m, all >= 0
  std::vector<double> c;               // n
};

struct SimplexResult {
  std::vector<double> x;  // primal, n
  std::vector<double> y;  // dual, m
  double objective = 0.0;
  long long pivots = 0;
  double max_residual = 0.0;
};

inline constexpr double kPivotEps = 1e-9;
inline constexpr double kCertifyTol = 1e-7;

// Worst violation among primal feasibility, dual feasibility and
// complementary slackness.
inline double lp_residual(const DenseLP& lp, const std::vector<double>& x,
                          const std::vector<double>& y) {
  const std::size_t m = lp.b.size(), n = lp.c.size();
  double worst = 0.0;
  std::vector<double> aty(n, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    double ax = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      ax += lp.a[i][j] * x[j];
      aty[j] += lp.a[i][j] * y[i];
    }
    const double slack = lp.b[i] - ax;
    worst = std::max({worst, -slack, -y[i], std::abs(y[i] * slack)});
  }
  for (std::size_t j = 0; j < n; ++j) {
    const double reduced = aty[j] - lp.c[j];
    worst = std::max({worst, -x[j], -reduced, std::abs(x[j] * reduced)});
  }
  return worst;
}

// Tucker-tableau simplex. Dantzig pricing while the objective improves;
// after a run of degenerate pivots it switches to Bland's smallest-index
// rule, which cannot cycle, until the objective moves again.
inline SimplexResult simplex_maximize(const DenseLP& lp,
                                      long long pivot_limit = -1) {
  const std::size_t m = lp.b.size(), n = lp.c.size();
  const std::size_t w = n + 1;
  std::vector<double> t((m + 1) * w, 0.0);
  auto at = [&](std::size_t i, std::size_t j) -> double& { return t[i * w + j]; };
  for (std::size_t i = 0; i < m; ++i) {
    if (lp.b[i] < 0) {
      throw EscapeError(ErrorKind::kNumerical, "simplex needs b >= 0");
    }
    for (std::size_t j = 0; j < n; ++j) at(i, j) = lp.a[i][j];
    at(i, n) = lp.b[i];
  }
  for (std::size_t j = 0; j < n; ++j) at(m, j) = -lp.c[j];
  // Labels: 0..n-1 structural, n..n+m-1 slack.
  std::vector<std::size_t> basic(m), nonbasic(n);
  for (std::size_t i = 0; i < m; ++i) basic[i] = n + i;
  for (std::size_t j = 0; j < n; ++j) nonbasic[j] = j;
  if (pivot_limit < 0) pivot_limit = 50LL * static_cast<long long>(m + n) + 1000;

  SimplexResult res;
  bool bland = false;
  int stalled = 0;
  std::vector<double> pivot_row(w);
  while (true) {
    std::size_t s = n;
    if (bland) {
      for (std::size_t j = 0; j < n; ++j) {
        if (at(m, j) < -kPivotEps && (s == n || nonbasic[j] < nonbasic[s])) s = j;
      }
    } else {
      double most = -kPivotEps;
      for (std::size_t j = 0; j < n; ++j) {
        if (at(m, j) < most) {
          most = at(m, j);
          s = j;
        }
      }
    }
    if (s == n) break;
    std::size_t r = m;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i) {
      const double coef = at(i, s);
      if (coef <= kPivotEps) continue;
      const double ratio = at(i, n) / coef;
      if (ratio < best_ratio - kPivotEps ||
          (r != m && ratio <= best_ratio + kPivotEps && basic[i] < basic[r])) {
        best_ratio = std::min(best_ratio, ratio);
        r = i;
      }
    }
    if (r == m) throw EscapeError(ErrorKind::kNumerical, "LP is unbounded");
    if (++res.pivots > pivot_limit) {
      throw EscapeError(ErrorKind::kNumerical, "simplex pivot limit reached");
    }
    const double before = at(m, n);
    const double p = at(r, s);
    for (std::size_t j = 0; j < w; ++j) pivot_row[j] = at(r, j) / p;
    pivot_row[s] = 1.0 / p;
    for (std::size_t i = 0; i <= m; ++i) {
      if (i == r) continue;
      const double f = at(i, s);
      if (f == 0.0) continue;
      double* row = &t[i * w];
      for (std::size_t j = 0; j < w; ++j) {
        if (j != s) row[j] -= f * pivot_row[j];
      }
      row[s] = -f / p;
    }
    for (std::size_t j = 0; j < w; ++j) at(r, j) = pivot_row[j];
    for (std::size_t i = 0; i < m; ++i) {
      if (at(i, n) < 0.0 && at(i, n) > -kPivotEps) at(i, n) = 0.0;
    }
    std::swap(basic[r], nonbasic[s]);
    if (at(m, n) > before + kPivotEps) {
      stalled = 0;
      bland = false;
    } else if (++stalled > 50) {
      bland = true;
    }
  }
  res.x.assign(n, 0.0);
  res.y.assign(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    if (basic[i] < n) res.x[basic[i]] = at(i, n);
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (nonbasic[j] >= n) res.y[nonbasic[j] - n] = at(m, j);
  }
  res.objective = at(m, n);
  res.max_residual = lp_residual(lp, res.x, res.y);
  if (res.max_residual > kCertifyTol) {
    throw EscapeError(ErrorKind::kNumerical,
                      "simplex result failed certification (residual " +
                          std::to_string(res.max_residual) + ")");
  }
  return res;
}

}  // namespace rect_escape

#endif  // RECT_ESCAPE_SIMPLEX_HPP_
