// Exact solvers: pruned brute force for the runaway number, the FPT
// procedure for inputs of density <= d-1, and a backtracking decider for the
// constrained (internal horizontal / vertical targets) variant.
#ifndef RECT_ESCAPE_EXACT_HPP_
#define RECT_ESCAPE_EXACT_HPP_

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rect_escape/geometry.hpp"
#include "rect_escape/intervals.hpp"

namespace rect_escape {

inline constexpr int kBruteForceCap = 10;
inline constexpr long long kDefaultNodeBudget = 20'000'000;

enum class Verdict : std::uint8_t { kYes, kNo, kInconclusive };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::kYes: return "yes";
    case Verdict::kNo: return "no";
    case Verdict::kInconclusive: return "inconclusive";
  }
  return "?";
}

namespace detail {

// Compression plus the four extension bands of every rect.
struct ExtensionTable {
  DensityGrid grid;
  std::vector<std::array<Rect, 4>> bands;

  explicit ExtensionTable(const Instance& inst)
      : grid(DensityGrid::for_instance(inst)) {
    bands.reserve(inst.rects.size());
    for (const Rect& r : inst.rects) {
      std::array<Rect, 4> b;
      for (Direction dir : kAllDirections) {
        b[index_of(dir)] = extension_band(r, inst.region, dir);
      }
      bands.push_back(b);
    }
  }

  // Applies the band; on overflow rolls it back and returns false.
  bool push(std::size_t i, Direction dir, int d) {
    const Rect& band = bands[i][index_of(dir)];
    if (grid.add_exceeds(band, d)) {
      grid.add(band, -1);
      return false;
    }
    return true;
  }
  void pop(std::size_t i, Direction dir) {
    grid.add(bands[i][index_of(dir)], -1);
  }
};

inline void require_feasible_input(const Instance& inst) {
  if (input_density(inst) > inst.d) {
    throw EscapeError(ErrorKind::kInfeasibleInput,
                      "input density exceeds d; no assignment is feasible");
  }
}

}  // namespace detail

struct BruteForceResult {
  int rho = 0;
  Assignment witness;
};

// Depth-first over {Up, Down, Left, Right, None} per rect in input order.
// Density only grows as extensions are added, so an overflowing partial
// assignment is cut immediately.
inline BruteForceResult brute_force_rho(const Instance& inst,
                                        int cap = kBruteForceCap) {
  validate(inst);
  const int n = static_cast<int>(inst.rects.size());
  if (n > cap) {
    throw EscapeError(ErrorKind::kSize, "brute force is capped at " +
                                            std::to_string(cap) + " rects");
  }
  detail::require_feasible_input(inst);
  detail::ExtensionTable table(inst);
  std::vector<Choice> cur(n), best_choices(n);
  int best = -1;
  auto dfs = [&](auto&& self, int i, int count) -> void {
    if (count + (n - i) <= best) return;
    if (i == n) {
      best = count;
      best_choices = cur;
      return;
    }
    for (Direction dir : kAllDirections) {
      if (!table.push(i, dir, inst.d)) continue;
      cur[i] = dir;
      self(self, i + 1, count + 1);
      cur[i].reset();
      table.pop(i, dir);
    }
    self(self, i + 1, count);
  };
  dfs(dfs, 0, 0);
  return {best, assignment_from_choices(inst, best_choices)};
}

struct FptTrace {
  int p = 0;
  int q = 0;
  std::vector<std::pair<Coord, Coord>> piercing_grid;
  int candidate_count = 0;
  long long subsets_tried = 0;
  bool reached_enumeration = false;
  Verdict verdict = Verdict::kNo;
  std::optional<Assignment> witness;
};

namespace detail {

// Searches the k-subsets of inst.rects in lexicographic index order; within
// a subset, direction vectors in lexicographic order (Up < Down < Left <
// Right). The first feasible pair is returned.
inline std::optional<std::vector<Choice>> enumerate_k_subsets(
    const Instance& inst, int k, long long& subsets_tried) {
  const int n = static_cast<int>(inst.rects.size());
  if (k > n) return std::nullopt;
  ExtensionTable table(inst);
  std::vector<int> subset(k);
  for (int i = 0; i < k; ++i) subset[i] = i;
  std::vector<Choice> choices(n);
  auto dirs = [&](auto&& self, int level) -> bool {
    if (level == k) return true;
    const int idx = subset[level];
    for (Direction dir : kAllDirections) {
      if (!table.push(idx, dir, inst.d)) continue;
      choices[idx] = dir;
      if (self(self, level + 1)) return true;
      choices[idx].reset();
      table.pop(idx, dir);
    }
    return false;
  };
  while (true) {
    ++subsets_tried;
    if (dirs(dirs, 0)) return choices;
    int pos = k - 1;
    while (pos >= 0 && subset[pos] == n - k + pos) --pos;
    if (pos < 0) return std::nullopt;
    ++subset[pos];
    for (int j = pos + 1; j < k; ++j) subset[j] = subset[j - 1] + 1;
  }
}

}  // namespace detail

namespace detail {

// With check_greedy set the early answers are only returned after a density
// check; that is what lets density-d inputs (square grids) reuse the
// procedure, since the enumeration itself is exhaustive either way.
inline FptTrace fpt_core(const Instance& inst, int k, bool check_greedy) {
  FptTrace trace;
  if (k == 0) {
    trace.verdict = Verdict::kYes;
    trace.witness = empty_assignment(inst);
    return trace;
  }
  // Pairwise x-disjoint rects sweep disjoint vertical bands, so moving all of
  // them up adds at most one to any point.
  const auto xs = greedy_independent_intervals(project(inst.rects, ProjectionAxis::kX));
  trace.p = static_cast<int>(xs.size());
  auto all_of = [&](const std::vector<Interval>& chosen, Direction dir) {
    Assignment a = empty_assignment(inst);
    for (const Interval& iv : chosen) a[iv.id] = dir;
    return a;
  };
  if (trace.p >= k) {
    Assignment a = all_of(xs, Direction::kUp);
    if (!check_greedy || is_feasible(inst, a)) {
      trace.verdict = Verdict::kYes;
      trace.witness = std::move(a);
      return trace;
    }
  }
  const auto ys = greedy_independent_intervals(project(inst.rects, ProjectionAxis::kY));
  trace.q = static_cast<int>(ys.size());
  if (trace.q >= k) {
    Assignment a = all_of(ys, Direction::kRight);
    if (!check_greedy || is_feasible(inst, a)) {
      trace.verdict = Verdict::kYes;
      trace.witness = std::move(a);
      return trace;
    }
  }
  // Last integer point of each greedy interval, on both axes.
  for (const Interval& ix : xs) {
    for (const Interval& iy : ys) trace.piercing_grid.emplace_back(ix.hi - 1, iy.hi - 1);
  }
  for (const Rect& r : inst.rects) {
    bool hit = false;
    for (const auto& [x, y] : trace.piercing_grid) hit = hit || r.contains_point(x, y);
    if (!hit) {
      throw std::logic_error("piercing grid misses rect " + std::to_string(r.id));
    }
  }
  trace.reached_enumeration = true;
  trace.candidate_count = static_cast<int>(inst.rects.size());
  // Every rect holds a grid point and no point is in more than d rects.
  if (static_cast<long long>(trace.candidate_count) >
      static_cast<long long>(inst.d) * trace.p * trace.q) {
    throw std::logic_error("candidate count exceeds d*p*q");
  }
  auto found = detail::enumerate_k_subsets(inst, k, trace.subsets_tried);
  if (found) {
    trace.verdict = Verdict::kYes;
    trace.witness = assignment_from_choices(inst, *found);
  } else {
    trace.verdict = Verdict::kNo;
  }
  return trace;
}

}  // namespace detail

inline FptTrace fpt_solve(const Instance& inst, int k) {
  validate(inst);
  if (k < 0) throw EscapeError(ErrorKind::kParameter, "k must be >= 0");
  if (input_density(inst) > inst.d - 1) {
    throw EscapeError(ErrorKind::kDensityPrecondition,
                      "fpt_solve needs input density <= d-1");
  }
  return detail::fpt_core(inst, k, false);
}

inline bool is_internal(const Rect& r, const Region& region) {
  return r.x_min != region.x_min && r.x_max != region.x_max &&
         r.y_min != region.y_min && r.y_max != region.y_max;
}

struct ConstrainedResult {
  Verdict verdict = Verdict::kNo;
  std::optional<Assignment> witness;
  long long nodes = 0;
};

// Decides whether >= p internal rects can move horizontally and >= q
// internal rects vertically at density <= d. Dropping an extension never
// raises density, so boundary rects stay put and no rect is extended
// beyond what the remaining deficits need.
inline ConstrainedResult constrained_solve(const Instance& inst, int p, int q,
                                           long long node_budget = kDefaultNodeBudget) {
  validate(inst);
  if (p < 0 || q < 0) throw EscapeError(ErrorKind::kParameter, "p and q must be >= 0");
  detail::require_feasible_input(inst);
  const DensityGrid input = DensityGrid::for_instance(inst);
  struct Candidate {
    std::size_t index;
    std::vector<Direction> options;
    bool horizontal = false, vertical = false;
  };
  std::vector<Candidate> cands;
  for (std::size_t i = 0; i < inst.rects.size(); ++i) {
    const Rect& r = inst.rects[i];
    if (!is_internal(r, inst.region)) continue;
    Candidate c{i, {}, false, false};
    for (Direction dir : {Direction::kRight, Direction::kLeft, Direction::kUp,
                          Direction::kDown}) {
      if (directional_block(input, inst.region, r, dir, inst.d)) continue;
      c.options.push_back(dir);
      (axis_of(dir) == Axis::kHorizontal ? c.horizontal : c.vertical) = true;
    }
    if (!c.options.empty()) cands.push_back(std::move(c));
  }
  std::stable_sort(cands.begin(), cands.end(),
                   [](const Candidate& a, const Candidate& b) {
                     return a.options.size() < b.options.size();
                   });
  const std::size_t m = cands.size();
  std::vector<int> rem_h(m + 1, 0), rem_v(m + 1, 0);
  for (std::size_t i = m; i-- > 0;) {
    rem_h[i] = rem_h[i + 1] + cands[i].horizontal;
    rem_v[i] = rem_v[i + 1] + cands[i].vertical;
  }
  detail::ExtensionTable table(inst);
  std::vector<Choice> choices(inst.rects.size());
  ConstrainedResult res;
  bool exhausted = false;
  auto dfs = [&](auto&& self, std::size_t pos, int h, int v) -> bool {
    if (h >= p && v >= q) return true;
    if (++res.nodes > node_budget) {
      exhausted = true;
      return false;
    }
    const int need_h = std::max(0, p - h), need_v = std::max(0, q - v);
    if (need_h > rem_h[pos] || need_v > rem_v[pos] ||
        need_h + need_v > static_cast<int>(m - pos)) {
      return false;
    }
    const Candidate& c = cands[pos];
    for (Direction dir : c.options) {
      const bool horiz = axis_of(dir) == Axis::kHorizontal;
      if (horiz ? need_h == 0 : need_v == 0) continue;
      if (!table.push(c.index, dir, inst.d)) continue;
      choices[c.index] = dir;
      if (self(self, pos + 1, h + horiz, v + !horiz)) return true;
      choices[c.index].reset();
      table.pop(c.index, dir);
      if (exhausted) return false;
    }
    return self(self, pos + 1, h, v);
  };
  if (dfs(dfs, 0, 0, 0)) {
    res.verdict = Verdict::kYes;
    res.witness = assignment_from_choices(inst, choices);
  } else {
    res.verdict = exhausted ? Verdict::kInconclusive : Verdict::kNo;
  }
  return res;
}

// Internal rects moved horizontally / vertically under an assignment.
inline std::pair<int, int> internal_axis_counts(const Instance& inst,
                                                const Assignment& a) {
  const auto choices = choices_by_index(inst, a);
  int h = 0, v = 0;
  for (std::size_t i = 0; i < inst.rects.size(); ++i) {
    if (!choices[i] || !is_internal(inst.rects[i], inst.region)) continue;
    (axis_of(*choices[i]) == Axis::kHorizontal ? h : v) += 1;
  }
  return {h, v};
}

}  // namespace rect_escape

#endif  // RECT_ESCAPE_EXACT_HPP_
