// Half-open intervals: projections, greedy independent sets, piercing and
// optimal k-fold packing.
#ifndef RECT_ESCAPE_INTERVALS_HPP_
#define RECT_ESCAPE_INTERVALS_HPP_

#include <algorithm>
#include <set>
#include <span>
#include <vector>

#include "rect_escape/geometry.hpp"

namespace rect_escape {

enum class ProjectionAxis : std::uint8_t { kX = 0, kY = 1 };

struct Interval {
  Id id = 0;
  Coord lo = 0, hi = 0;

  bool overlaps(const Interval& o) const { return lo < o.hi && o.lo < hi; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

struct PackingResult {
  std::set<Id> selected;
  // At most k classes, each pairwise disjoint; their union is `selected`.
  std::vector<std::vector<Id>> color_classes;
};

inline std::vector<Interval> project(std::span<const Rect> rects,
                                     ProjectionAxis axis) {
  std::vector<Interval> out;
  out.reserve(rects.size());
  for (const Rect& r : rects) {
    if (axis == ProjectionAxis::kX) {
      out.push_back({r.id, r.x_min, r.x_max});
    } else {
      out.push_back({r.id, r.y_min, r.y_max});
    }
  }
  return out;
}

// Projection onto the axis perpendicular to motion along `axis`: vertical
// motion keeps x-extents apart, horizontal motion keeps y-extents apart.
inline ProjectionAxis perpendicular(Axis axis) {
  return axis == Axis::kVertical ? ProjectionAxis::kX : ProjectionAxis::kY;
}

inline std::vector<Interval> sorted_by_right(std::span<const Interval> in) {
  std::vector<Interval> v(in.begin(), in.end());
  std::sort(v.begin(), v.end(), [](const Interval& a, const Interval& b) {
    return a.hi != b.hi ? a.hi < b.hi : a.id < b.id;
  });
  return v;
}

// Greedy by earliest right endpoint; the returned intervals are in
// increasing right-endpoint order.
inline std::vector<Interval> greedy_independent_intervals(
    std::span<const Interval> in) {
  std::vector<Interval> chosen;
  bool any = false;
  Coord frontier = 0;
  for (const Interval& iv : sorted_by_right(in)) {
    if (!any || iv.lo >= frontier) {
      chosen.push_back(iv);
      frontier = iv.hi;
      any = true;
    }
  }
  return chosen;
}

inline std::set<Id> max_independent_set(std::span<const Interval> in) {
  std::set<Id> ids;
  for (const Interval& iv : greedy_independent_intervals(in)) ids.insert(iv.id);
  return ids;
}

// Right endpoint minus one of every greedy pick: the last integer point of
// each half-open interval. Every input interval contains one of them.
inline std::vector<Coord> piercing_points(std::span<const Interval> in) {
  std::vector<Coord> pts;
  for (const Interval& iv : greedy_independent_intervals(in)) {
    pts.push_back(iv.hi - 1);
  }
  return pts;
}

// Maximum overlap depth of a family (closed-open).
inline int interval_depth(std::span<const Interval> in) {
  std::vector<std::pair<Coord, int>> events;
  for (const Interval& iv : in) {
    events.emplace_back(iv.lo, +1);
    events.emplace_back(iv.hi, -1);
  }
  // Ends before starts at equal coordinates.
  std::sort(events.begin(), events.end());
  int cur = 0, best = 0;
  for (const auto& [x, delta] : events) {
    cur += delta;
    best = std::max(best, cur);
  }
  return best;
}

// Optimal k-fold packing: scan by (right endpoint, id) and keep an interval
// whenever the depth profile stays <= k. Classes are built by first-fit in
// left-endpoint order, which never needs more classes than the depth.
inline PackingResult k_fold_packing(std::span<const Interval> in, int k) {
  if (k < 1) throw EscapeError(ErrorKind::kParameter, "k_fold_packing needs k >= 1");
  PackingResult res;
  std::vector<Coord> coords;
  for (const Interval& iv : in) {
    coords.push_back(iv.lo);
    coords.push_back(iv.hi);
  }
  std::sort(coords.begin(), coords.end());
  coords.erase(std::unique(coords.begin(), coords.end()), coords.end());
  std::vector<int> depth(coords.size(), 0);
  auto idx = [&](Coord v) {
    return static_cast<std::size_t>(
        std::lower_bound(coords.begin(), coords.end(), v) - coords.begin());
  };
  std::vector<Interval> accepted;
  for (const Interval& iv : sorted_by_right(in)) {
    std::size_t a = idx(iv.lo), b = idx(iv.hi);
    bool fits = true;
    for (std::size_t i = a; i < b && fits; ++i) fits = depth[i] < k;
    if (!fits) continue;
    for (std::size_t i = a; i < b; ++i) ++depth[i];
    accepted.push_back(iv);
    res.selected.insert(iv.id);
  }
  std::sort(accepted.begin(), accepted.end(),
            [](const Interval& x, const Interval& y) {
              return x.lo != y.lo ? x.lo < y.lo : x.id < y.id;
            });
  std::vector<Coord> class_end;
  for (const Interval& iv : accepted) {
    std::size_t c = 0;
    while (c < class_end.size() && class_end[c] > iv.lo) ++c;
    if (c == class_end.size()) {
      class_end.push_back(iv.hi);
      res.color_classes.emplace_back();
    } else {
      class_end[c] = iv.hi;
    }
    res.color_classes[c].push_back(iv.id);
  }
  return res;
}

}  // namespace rect_escape

#endif  // RECT_ESCAPE_INTERVALS_HPP_
