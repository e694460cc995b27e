// Approximation solvers for rectangles built on direction-restricted
// subproblems: a 4d-approximation in general and 4d/(d-1) for disjoint input.
#ifndef RECT_ESCAPE_APPROX_HPP_
#define RECT_ESCAPE_APPROX_HPP_

#include <numeric>
#include <string>

#include "rect_escape/geometry.hpp"
#include "rect_escape/intervals.hpp"

namespace rect_escape {

struct Solution {
  Assignment assignment;
  int extended_count = 0;
  std::string algorithm_tag;
  // "exact", "heuristic", or a positive rational such as "8" or "8/3".
  std::string claimed_ratio;
  // Set when the input already exceeds d; the assignment is then all-None.
  bool infeasible_input = false;
};

inline std::string format_ratio(long long num, long long den) {
  long long g = std::gcd(num, den);
  num /= g;
  den /= g;
  return den == 1 ? std::to_string(num)
                  : std::to_string(num) + "/" + std::to_string(den);
}

inline Solution make_solution(const Instance& inst,
                              const std::vector<Choice>& choices,
                              std::string tag, std::string ratio) {
  Solution s;
  s.assignment = assignment_from_choices(inst, choices);
  s.extended_count = extended_count(s.assignment);
  s.algorithm_tag = std::move(tag);
  s.claimed_ratio = std::move(ratio);
  return s;
}

inline Solution infeasible_input_solution(const Instance& inst, std::string tag,
                                          std::string ratio) {
  Solution s = make_solution(inst, std::vector<Choice>(inst.rects.size()),
                             std::move(tag), std::move(ratio));
  s.infeasible_input = true;
  return s;
}

inline Solution solve_axis_restricted_general(const Instance& inst, Axis axis) {
  validate(inst);
  const std::string tag =
      axis == Axis::kVertical ? "axis-vertical" : "axis-horizontal";
  const std::string ratio = format_ratio(2LL * inst.d, 1);
  if (input_density(inst) > inst.d) {
    return infeasible_input_solution(inst, tag, ratio);
  }
  const DensityGrid input = DensityGrid::for_instance(inst);
  const auto dirs = directions_on(axis);
  std::vector<Rect> good;
  for (const Rect& r : inst.rects) {
    bool stuck = true;
    for (Direction dir : dirs) {
      stuck = stuck && directional_block(input, inst.region, r, dir, inst.d);
    }
    if (!stuck) good.push_back(r);
  }
  const std::set<Id> chosen =
      max_independent_set(project(good, perpendicular(axis)));
  std::vector<Choice> choices(inst.rects.size());
  for (std::size_t i = 0; i < inst.rects.size(); ++i) {
    const Rect& r = inst.rects[i];
    if (!chosen.count(r.id)) continue;
    for (Direction dir : dirs) {
      if (!directional_block(input, inst.region, r, dir, inst.d)) {
        choices[i] = dir;
        break;
      }
    }
  }
  return make_solution(inst, choices, tag, ratio);
}

inline Solution solve_general_4d(const Instance& inst) {
  Solution v = solve_axis_restricted_general(inst, Axis::kVertical);
  Solution h = solve_axis_restricted_general(inst, Axis::kHorizontal);
  Solution best = h.extended_count > v.extended_count ? std::move(h) : std::move(v);
  best.algorithm_tag = "approx4d";
  best.claimed_ratio = format_ratio(4LL * inst.d, 1);
  return best;
}

inline void require_disjoint(const Instance& inst) {
  if (input_density(inst) > 1) {
    throw EscapeError(ErrorKind::kDisjointness,
                      "input rectangles are not pairwise disjoint");
  }
}

// All selected rects move in `dir`. With d >= 2 a (d-1)-fold packing of the
// perpendicular projections keeps every point at <= (d-1) + 1. With d = 1
// only unblocked rects qualify and the packing is an independent set.
inline Solution solve_direction_restricted_disjoint(const Instance& inst,
                                                    Direction dir) {
  validate(inst);
  require_disjoint(inst);
  const DensityGrid input = DensityGrid::for_instance(inst);
  std::vector<Rect> pool;
  for (const Rect& r : inst.rects) {
    if (!directional_block(input, inst.region, r, dir, inst.d)) pool.push_back(r);
  }
  const int fold = std::max(inst.d - 1, 1);
  const PackingResult pack =
      k_fold_packing(project(pool, perpendicular(axis_of(dir))), fold);
  std::vector<Choice> choices(inst.rects.size());
  for (std::size_t i = 0; i < inst.rects.size(); ++i) {
    if (pack.selected.count(inst.rects[i].id)) choices[i] = dir;
  }
  return make_solution(inst, choices, std::string("disjoint-") + to_string(dir),
                       inst.d >= 2 ? format_ratio(inst.d, inst.d - 1) : "1");
}

inline Solution solve_disjoint(const Instance& inst) {
  validate(inst);
  if (inst.d < 2) {
    throw EscapeError(ErrorKind::kParameter,
                      "the disjoint algorithm needs d >= 2");
  }
  require_disjoint(inst);
  Solution best;
  bool have = false;
  for (Direction dir : kAllDirections) {
    Solution s = solve_direction_restricted_disjoint(inst, dir);
    if (!have || s.extended_count > best.extended_count) {
      best = std::move(s);
      have = true;
    }
  }
  best.algorithm_tag = "disjoint";
  best.claimed_ratio = format_ratio(4LL * inst.d, inst.d - 1);
  return best;
}

}  // namespace rect_escape

#endif  // RECT_ESCAPE_APPROX_HPP_
