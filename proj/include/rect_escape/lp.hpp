// LP relaxation over compressed-cell representatives, scaled randomized
// rounding with independent per-trial streams, and the density-slack report.
#ifndef RECT_ESCAPE_LP_HPP_
#define RECT_ESCAPE_LP_HPP_

#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <vector>

#include "rect_escape/approx.hpp"
#include "rect_escape/geometry.hpp"
#include "rect_escape/rng.hpp"
#include "rect_escape/simplex.hpp"

namespace rect_escape {

using GridPoint = std::pair<Coord, Coord>;

// One representative (lower-left corner) per cell induced by all rect
// boundaries and the region border.
inline std::vector<GridPoint> build_grid(const Instance& inst) {
  DensityGrid g = DensityGrid::for_instance(inst);
  std::vector<GridPoint> pts;
  pts.reserve(g.nx() * g.ny());
  for (std::size_t i = 0; i < g.nx(); ++i) {
    for (std::size_t j = 0; j < g.ny(); ++j) pts.emplace_back(g.xs()[i], g.ys()[j]);
  }
  return pts;
}

// Variable r[i, dir] lives at index 4*i + dir.
inline constexpr int lp_var(std::size_t rect_index, Direction dir) {
  return static_cast<int>(4 * rect_index) + index_of(dir);
}

struct PointConstraint {
  GridPoint point;
  int input_density = 0;  // d_p
  int rhs = 0;            // d - d_p
  std::vector<int> vars;  // S_p
};

struct LPModel {
  std::vector<Id> rect_ids;
  int d = 1;
  std::vector<PointConstraint> points;
  // Choice constraint of rect i is sum over dir of r[i, dir] <= 1, implicit
  // in the 4-variable layout.
  std::size_t num_vars() const { return 4 * rect_ids.size(); }
};

struct FractionalSolution {
  std::vector<Id> rect_ids;
  std::vector<double> values;  // indexed by lp_var
  double objective_value = 0.0;

  double value(std::size_t rect_index, Direction dir) const {
    return values[lp_var(rect_index, dir)];
  }
};

inline LPModel build_lp(const Instance& inst) {
  validate(inst);
  LPModel model;
  model.d = inst.d;
  for (const Rect& r : inst.rects) model.rect_ids.push_back(r.id);
  std::vector<std::array<Rect, 4>> bands;
  for (const Rect& r : inst.rects) {
    std::array<Rect, 4> b;
    for (Direction dir : kAllDirections) {
      b[index_of(dir)] = extension_band(r, inst.region, dir);
    }
    bands.push_back(b);
  }
  for (const GridPoint& pt : build_grid(inst)) {
    PointConstraint pc;
    pc.point = pt;
    for (std::size_t i = 0; i < inst.rects.size(); ++i) {
      if (inst.rects[i].contains_point(pt.first, pt.second)) ++pc.input_density;
      for (Direction dir : kAllDirections) {
        const Rect& band = bands[i][index_of(dir)];
        if (band.valid() && band.contains_point(pt.first, pt.second)) {
          pc.vars.push_back(lp_var(i, dir));
        }
      }
    }
    if (pc.input_density > inst.d) {
      throw EscapeError(ErrorKind::kInfeasibleInput,
                        "input density exceeds d at a grid cell");
    }
    pc.rhs = inst.d - pc.input_density;
    model.points.push_back(std::move(pc));
  }
  return model;
}

// Dense form of the model. Point rows with no variables are dropped and rows
// with identical variable sets keep only the smallest right-hand side; the
// returned map sends each kept dense row to its model row.
inline DenseLP to_dense(const LPModel& model, std::vector<std::size_t>* row_source) {
  const std::size_t n = model.num_vars();
  DenseLP lp;
  lp.c.assign(n, 1.0);
  std::map<std::vector<int>, std::size_t> seen;
  for (std::size_t p = 0; p < model.points.size(); ++p) {
    const PointConstraint& pc = model.points[p];
    if (pc.vars.empty()) continue;
    auto [it, fresh] = seen.emplace(pc.vars, lp.b.size());
    if (!fresh) {
      if (pc.rhs < lp.b[it->second]) {
        lp.b[it->second] = pc.rhs;
        if (row_source) (*row_source)[it->second] = p;
      }
      continue;
    }
    std::vector<double> row(n, 0.0);
    for (int v : pc.vars) row[v] = 1.0;
    lp.a.push_back(std::move(row));
    lp.b.push_back(pc.rhs);
    if (row_source) row_source->push_back(p);
  }
  for (std::size_t i = 0; i < model.rect_ids.size(); ++i) {
    std::vector<double> row(n, 0.0);
    for (Direction dir : kAllDirections) row[lp_var(i, dir)] = 1.0;
    lp.a.push_back(std::move(row));
    lp.b.push_back(1.0);
    if (row_source) row_source->push_back(model.points.size() + i);
  }
  return lp;
}

inline FractionalSolution solve_lp(const LPModel& model) {
  const DenseLP lp = to_dense(model, nullptr);
  const SimplexResult sr = simplex_maximize(lp);
  FractionalSolution frac;
  frac.rect_ids = model.rect_ids;
  frac.values = sr.x;
  for (double& v : frac.values) v = std::clamp(v, 0.0, 1.0);
  frac.objective_value = sr.objective;
  return frac;
}

// Per rect: direction dir with probability (1-eps) r[i,dir], None with the
// remaining mass 1 - (1-eps) sum r[i,.] >= eps.
inline Assignment randomized_round(const FractionalSolution& frac, double epsilon,
                                   SplitMix64& rng) {
  if (!(epsilon > 0.0 && epsilon < 0.5)) {
    throw EscapeError(ErrorKind::kParameter, "epsilon must lie in (0, 1/2)");
  }
  Assignment a;
  for (std::size_t i = 0; i < frac.rect_ids.size(); ++i) {
    const double u = rng.uniform();
    double acc = 0.0;
    Choice pick;
    for (Direction dir : kAllDirections) {
      acc += (1.0 - epsilon) * frac.value(i, dir);
      if (u < acc) {
        pick = dir;
        break;
      }
    }
    a[frac.rect_ids[i]] = pick;
  }
  return a;
}

struct RoundingParams {
  double epsilon = 0.1;
  int trials = 32;
  std::uint64_t rng_seed = 0;
};

struct RoundingOutcome {
  std::optional<Solution> solution;  // absent when no trial was feasible
  double lp_value = 0.0;
  std::vector<int> trial_max_density;
  int feasible_trials = 0;
  int best_trial = -1;
};

inline RoundingOutcome randomized_solve(const Instance& inst,
                                        const RoundingParams& params) {
  if (params.trials < 1) throw EscapeError(ErrorKind::kParameter, "trials must be >= 1");
  const LPModel model = build_lp(inst);
  const FractionalSolution frac = solve_lp(model);
  RoundingOutcome out;
  out.lp_value = frac.objective_value;
  for (int t = 0; t < params.trials; ++t) {
    SplitMix64 rng = trial_stream(params.rng_seed, static_cast<std::uint64_t>(t));
    Assignment a = randomized_round(frac, params.epsilon, rng);
    const int dens = max_density(apply_assignment(inst, a)).max_density;
    out.trial_max_density.push_back(dens);
    if (dens > inst.d) continue;
    ++out.feasible_trials;
    const int count = extended_count(a);
    if (!out.solution || count > out.solution->extended_count) {
      Solution s;
      s.assignment = std::move(a);
      s.extended_count = count;
      s.algorithm_tag = "lp-round";
      s.claimed_ratio = "1/(1-eps) whp";
      out.solution = std::move(s);
      out.best_trial = t;
    }
  }
  return out;
}

struct PreconditionReport {
  double alpha = 0.0;
  double d_threshold = 0.0;
  bool satisfied = false;
  // Largest constant C with d >= C ln n (1 - eps alpha) / (eps alpha)^2,
  // compared with kChernoffConstant in d_threshold.
  double effective_constant = 0.0;
  std::vector<double> mu;     // (1-eps) d + eps d_p, per grid cell
  std::vector<double> delta;  // d / mu_p - 1, per grid cell
};

inline constexpr double kChernoffConstant = 9.0;

inline PreconditionReport check_preconditions(const Instance& inst, double epsilon) {
  validate(inst);
  const DensityGrid g = DensityGrid::for_instance(inst);
  PreconditionReport rep;
  rep.alpha = 1.0;
  const double d = inst.d;
  for (std::size_t i = 0; i < g.nx(); ++i) {
    for (std::size_t j = 0; j < g.ny(); ++j) {
      const double dp = g.at(i, j);
      rep.alpha = std::min(rep.alpha, 1.0 - dp / d);
      const double mu = (1.0 - epsilon) * d + epsilon * dp;
      rep.mu.push_back(mu);
      rep.delta.push_back(d / mu - 1.0);
    }
  }
  const double n = std::max<double>(2.0, static_cast<double>(inst.rects.size()));
  const double shape = std::log(n) * (1.0 - epsilon * rep.alpha);
  if (rep.alpha <= 0.0) {
    rep.d_threshold = std::numeric_limits<double>::infinity();
    rep.satisfied = false;
    rep.effective_constant = 0.0;
    return rep;
  }
  const double scale = epsilon * epsilon * rep.alpha * rep.alpha;
  rep.d_threshold = kChernoffConstant * shape / scale;
  rep.satisfied = d >= rep.d_threshold;
  rep.effective_constant = d * scale / shape;
  return rep;
}

}  // namespace rect_escape

#endif  // RECT_ESCAPE_LP_HPP_
