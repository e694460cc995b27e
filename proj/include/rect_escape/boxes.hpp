// Boxes in three dimensions: voxel density, stuck boxes, and the two
// projection pipelines that reduce box escape to planar independent sets.
#ifndef RECT_ESCAPE_BOXES_HPP_
#define RECT_ESCAPE_BOXES_HPP_

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "rect_escape/geometry.hpp"

namespace rect_escape {

struct Box3 {
  Id id = 0;
  std::array<Coord, 3> lo{};
  std::array<Coord, 3> hi{};

  bool valid() const { return lo[0] < hi[0] && lo[1] < hi[1] && lo[2] < hi[2]; }
  bool contains_point(const std::array<Coord, 3>& p) const {
    for (int a = 0; a < 3; ++a) {
      if (p[a] < lo[a] || p[a] >= hi[a]) return false;
    }
    return true;
  }
  bool overlaps(const Box3& o) const {
    for (int a = 0; a < 3; ++a) {
      if (hi[a] <= o.lo[a] || o.hi[a] <= lo[a]) return false;
    }
    return true;
  }
  friend bool operator==(const Box3&, const Box3&) = default;
};

struct Region3 {
  std::array<Coord, 3> lo{};
  std::array<Coord, 3> hi{};
  friend bool operator==(const Region3&, const Region3&) = default;
};

struct Instance3 {
  Region3 region;
  std::vector<Box3> boxes;
  int d = 1;
  std::optional<int> k;
};

// Axis a in {0, 1, 2} = {x, y, z}; positive or negative along it.
enum class Direction3 : std::uint8_t { kXPlus, kXMinus, kYPlus, kYMinus, kZPlus, kZMinus };

inline constexpr std::array<Direction3, 6> kAllDirections3 = {
    Direction3::kXPlus, Direction3::kXMinus, Direction3::kYPlus,
    Direction3::kYMinus, Direction3::kZPlus, Direction3::kZMinus};

inline constexpr int axis_of(Direction3 dir) { return static_cast<int>(dir) / 2; }
inline constexpr bool is_positive(Direction3 dir) { return static_cast<int>(dir) % 2 == 0; }
inline constexpr Direction3 direction3(int axis, bool positive) {
  return static_cast<Direction3>(2 * axis + (positive ? 0 : 1));
}

inline const char* to_string(Direction3 dir) {
  static constexpr const char* kNames[] = {"x+", "x-", "y+", "y-", "z+", "z-"};
  return kNames[static_cast<int>(dir)];
}

inline std::optional<Direction3> parse_direction3(std::string_view s) {
  for (Direction3 dir : kAllDirections3) {
    if (s == to_string(dir)) return dir;
  }
  return std::nullopt;
}

using Choice3 = std::optional<Direction3>;
using Assignment3 = std::map<Id, Choice3>;

struct Solution3 {
  Assignment3 assignment;
  int extended_count = 0;
  std::string algorithm_tag;
  std::string claimed_ratio;
};

struct DensityReport3 {
  int max_density = 0;
  std::optional<std::array<Coord, 3>> witness;
};

inline void validate(const Instance3& inst) {
  if (inst.d < 1) throw EscapeError(ErrorKind::kInvalidInstance, "d must be >= 1");
  for (int a = 0; a < 3; ++a) {
    if (inst.region.lo[a] >= inst.region.hi[a]) {
      throw EscapeError(ErrorKind::kInvalidInstance, "region is empty");
    }
  }
  std::set<Id> ids;
  for (const Box3& b : inst.boxes) {
    if (!b.valid()) {
      throw EscapeError(ErrorKind::kInvalidInstance, "box " + std::to_string(b.id) + " is empty");
    }
    for (int a = 0; a < 3; ++a) {
      if (b.lo[a] < inst.region.lo[a] || b.hi[a] > inst.region.hi[a]) {
        throw EscapeError(ErrorKind::kInvalidInstance,
                          "box " + std::to_string(b.id) + " leaves the region");
      }
    }
    if (!ids.insert(b.id).second) {
      throw EscapeError(ErrorKind::kInvalidInstance, "duplicate box id " + std::to_string(b.id));
    }
  }
}

inline Box3 extend(const Box3& b, const Region3& region, Direction3 dir) {
  Box3 out = b;
  const int a = axis_of(dir);
  if (is_positive(dir)) {
    out.hi[a] = region.hi[a];
  } else {
    out.lo[a] = region.lo[a];
  }
  return out;
}

// The part of the extension strictly beyond the box; may be empty.
inline Box3 extension_band(const Box3& b, const Region3& region, Direction3 dir) {
  Box3 out = b;
  const int a = axis_of(dir);
  if (is_positive(dir)) {
    out.lo[a] = b.hi[a];
    out.hi[a] = region.hi[a];
  } else {
    out.lo[a] = region.lo[a];
    out.hi[a] = b.lo[a];
  }
  return out;
}

inline std::vector<Box3> apply_assignment(const Instance3& inst, const Assignment3& a) {
  std::set<Id> known;
  for (const Box3& b : inst.boxes) known.insert(b.id);
  for (const auto& [id, c] : a) {
    if (!known.count(id)) {
      throw EscapeError(ErrorKind::kDomainMismatch,
                        "assignment names unknown box id " + std::to_string(id));
    }
  }
  std::vector<Box3> out;
  for (const Box3& b : inst.boxes) {
    auto it = a.find(b.id);
    out.push_back(it != a.end() && it->second ? extend(b, inst.region, *it->second) : b);
  }
  return out;
}

inline int extended_count(const Assignment3& a) {
  int n = 0;
  for (const auto& [id, c] : a) n += c.has_value();
  return n;
}

// Counts on the voxels of the compressed 3D grid.
class DensityGrid3 {
 public:
  DensityGrid3(std::vector<Coord> xs, std::vector<Coord> ys, std::vector<Coord> zs)
      : axes_{std::move(xs), std::move(ys), std::move(zs)} {
    for (auto& v : axes_) {
      std::sort(v.begin(), v.end());
      v.erase(std::unique(v.begin(), v.end()), v.end());
    }
    cells_.assign(size(0) * size(1) * size(2), 0);
  }

  static DensityGrid3 for_boxes(const Region3& region, const std::vector<Box3>& boxes) {
    std::array<std::vector<Coord>, 3> c;
    for (int a = 0; a < 3; ++a) {
      c[a] = {region.lo[a], region.hi[a]};
      for (const Box3& b : boxes) {
        c[a].push_back(b.lo[a]);
        c[a].push_back(b.hi[a]);
      }
    }
    DensityGrid3 g(c[0], c[1], c[2]);
    for (const Box3& b : boxes) g.add(b, 1);
    return g;
  }

  std::size_t size(int a) const { return axes_[a].empty() ? 0 : axes_[a].size() - 1; }

  int& at(std::size_t i, std::size_t j, std::size_t k) {
    return cells_[(i * size(1) + j) * size(2) + k];
  }
  int at(std::size_t i, std::size_t j, std::size_t k) const {
    return cells_[(i * size(1) + j) * size(2) + k];
  }

  // Calls f(i, j, k) for each voxel inside b; b's faces must be grid lines.
  template <typename F>
  void for_each_cell(const Box3& b, F&& f) const {
    std::array<std::size_t, 3> from{}, to{};
    for (int a = 0; a < 3; ++a) {
      if (b.lo[a] >= b.hi[a]) return;
      from[a] = index(a, b.lo[a]);
      to[a] = index(a, b.hi[a]);
    }
    for (std::size_t i = from[0]; i < to[0]; ++i) {
      for (std::size_t j = from[1]; j < to[1]; ++j) {
        for (std::size_t k = from[2]; k < to[2]; ++k) f(i, j, k);
      }
    }
  }

  void add(const Box3& b, int delta) {
    for_each_cell(b, [&](std::size_t i, std::size_t j, std::size_t k) { at(i, j, k) += delta; });
  }

  int max_in(const Box3& b) const {
    int best = 0;
    for_each_cell(b, [&](std::size_t i, std::size_t j, std::size_t k) {
      best = std::max(best, at(i, j, k));
    });
    return best;
  }

  DensityReport3 report() const {
    DensityReport3 rep;
    for (std::size_t i = 0; i < size(0); ++i) {
      for (std::size_t j = 0; j < size(1); ++j) {
        for (std::size_t k = 0; k < size(2); ++k) {
          if (at(i, j, k) > rep.max_density) {
            rep.max_density = at(i, j, k);
            rep.witness = std::array<Coord, 3>{axes_[0][i], axes_[1][j], axes_[2][k]};
          }
        }
      }
    }
    return rep;
  }

 private:
  std::size_t index(int a, Coord v) const {
    auto it = std::lower_bound(axes_[a].begin(), axes_[a].end(), v);
    if (it == axes_[a].end() || *it != v) {
      throw std::logic_error("coordinate is not a grid line");
    }
    return static_cast<std::size_t>(it - axes_[a].begin());
  }

  std::array<std::vector<Coord>, 3> axes_;
  std::vector<int> cells_;
};

inline DensityReport3 max_density(const Region3& region, const std::vector<Box3>& boxes) {
  return DensityGrid3::for_boxes(region, boxes).report();
}

inline int input_density(const Instance3& inst) {
  return max_density(inst.region, inst.boxes).max_density;
}

inline DensityReport3 density_of(const Instance3& inst, const Assignment3& a) {
  return max_density(inst.region, apply_assignment(inst, a));
}

inline bool is_feasible(const Instance3& inst, const Assignment3& a) {
  return density_of(inst, a).max_density <= inst.d;
}

// Extending b alone toward dir would push some point past d.
inline bool directional_block(const DensityGrid3& input, const Region3& region,
                              const Box3& b, Direction3 dir, int d) {
  const Box3 band = extension_band(b, region, dir);
  return band.valid() && input.max_in(band) >= d;
}

inline std::set<Id> stuck_boxes(const Instance3& inst, int axis) {
  validate(inst);
  const DensityGrid3 input = DensityGrid3::for_boxes(inst.region, inst.boxes);
  std::set<Id> out;
  for (const Box3& b : inst.boxes) {
    if (directional_block(input, inst.region, b, direction3(axis, true), inst.d) &&
        directional_block(input, inst.region, b, direction3(axis, false), inst.d)) {
      out.insert(b.id);
    }
  }
  return out;
}

// Footprint on the plane perpendicular to axis: x drops to (y, z), y to
// (x, z), z to (x, y).
inline std::vector<Rect> project_boxes(const std::vector<Box3>& boxes, int axis) {
  const int u = axis == 0 ? 1 : 0;
  const int v = axis == 2 ? 1 : 2;
  std::vector<Rect> out;
  out.reserve(boxes.size());
  for (const Box3& b : boxes) out.push_back({b.id, b.lo[u], b.lo[v], b.hi[u], b.hi[v]});
  return out;
}

// A planar maximum-independent-set routine plus the ratio it can promise.
struct MisPlugin {
  std::string name;
  bool exact = false;
  std::function<std::set<Id>(const std::vector<Rect>&)> solve;
};

inline constexpr int kRectMisCap = 16;

// Branch and bound over the intersection graph: branch on the remaining
// vertex of highest degree, cut when current + remaining cannot beat best.
inline std::set<Id> rect_mis_exact(const std::vector<Rect>& rects, int cap = kRectMisCap) {
  const int n = static_cast<int>(rects.size());
  if (n > cap || n > 63) {
    throw EscapeError(ErrorKind::kSize,
                      "rect_mis_exact is capped at " + std::to_string(cap) + " rects");
  }
  std::vector<std::uint64_t> adj(n, 0);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (rects[i].overlaps(rects[j])) {
        adj[i] |= 1ULL << j;
        adj[j] |= 1ULL << i;
      }
    }
  }
  std::uint64_t best = 0, cur = 0;
  int best_size = 0;
  auto search = [&](auto&& self, std::uint64_t left, int size) -> void {
    if (size + std::popcount(left) <= best_size) return;
    if (left == 0) {
      best_size = size;
      best = cur;
      return;
    }
    int pick = -1, pick_deg = -1;
    for (std::uint64_t rest = left; rest; rest &= rest - 1) {
      const int v = std::countr_zero(rest);
      const int deg = std::popcount(adj[v] & left);
      if (deg > pick_deg) {
        pick = v;
        pick_deg = deg;
      }
    }
    const std::uint64_t bit = 1ULL << pick;
    if (pick_deg == 0) {
      // Every remaining vertex is isolated: take them all.
      cur |= left;
      self(self, 0, size + std::popcount(left));
      cur &= ~left;
      return;
    }
    cur |= bit;
    self(self, left & ~bit & ~adj[pick], size + 1);
    cur &= ~bit;
    self(self, left & ~bit, size);
  };
  search(search, n == 64 ? ~0ULL : (1ULL << n) - 1, 0);
  std::set<Id> out;
  for (int i = 0; i < n; ++i) {
    if (best >> i & 1ULL) out.insert(rects[i].id);
  }
  return out;
}

// Smallest area first, then by upper-right corner and id; keeps a rect when
// it misses everything kept so far. No approximation guarantee.
inline std::set<Id> rect_mis_greedy(const std::vector<Rect>& rects) {
  std::vector<Rect> order = rects;
  std::sort(order.begin(), order.end(), [](const Rect& a, const Rect& b) {
    const auto area = [](const Rect& r) { return (r.x_max - r.x_min) * (r.y_max - r.y_min); };
    if (area(a) != area(b)) return area(a) < area(b);
    if (a.x_max != b.x_max) return a.x_max < b.x_max;
    if (a.y_max != b.y_max) return a.y_max < b.y_max;
    return a.id < b.id;
  });
  std::vector<Rect> kept;
  std::set<Id> out;
  for (const Rect& r : order) {
    bool clear = true;
    for (const Rect& k : kept) clear = clear && !r.overlaps(k);
    if (clear) {
      kept.push_back(r);
      out.insert(r.id);
    }
  }
  return out;
}

inline MisPlugin exact_mis_plugin() {
  return {"exact", true, [](const std::vector<Rect>& r) { return rect_mis_exact(r); }};
}

inline MisPlugin greedy_mis_plugin() {
  return {"greedy", false, [](const std::vector<Rect>& r) { return rect_mis_greedy(r); }};
}

inline Assignment3 empty_assignment(const Instance3& inst) {
  Assignment3 a;
  for (const Box3& b : inst.boxes) a[b.id] = std::nullopt;
  return a;
}

inline Solution3 make_solution3(Assignment3 a, std::string tag, std::string ratio) {
  Solution3 s;
  s.extended_count = extended_count(a);
  s.assignment = std::move(a);
  s.algorithm_tag = std::move(tag);
  s.claimed_ratio = std::move(ratio);
  return s;
}

// Per axis: drop stuck boxes, take an independent set of the remaining
// footprints and push each winner out through a side it is free on. The
// winners' prisms are disjoint, so their solo feasibility adds up. Best of
// the three axes, x first on ties.
inline Solution3 solve_boxes_general(const Instance3& inst, const MisPlugin& plugin) {
  validate(inst);
  const std::string ratio = plugin.exact ? std::to_string(12 * inst.d) : "heuristic";
  if (input_density(inst) > inst.d) {
    return make_solution3(empty_assignment(inst), "boxes-general", ratio);
  }
  const DensityGrid3 input = DensityGrid3::for_boxes(inst.region, inst.boxes);
  std::optional<Assignment3> best;
  for (int axis = 0; axis < 3; ++axis) {
    const std::set<Id> stuck = stuck_boxes(inst, axis);
    std::vector<Box3> live;
    for (const Box3& b : inst.boxes) {
      if (!stuck.count(b.id)) live.push_back(b);
    }
    const std::set<Id> winners = plugin.solve(project_boxes(live, axis));
    Assignment3 a = empty_assignment(inst);
    for (const Box3& b : live) {
      if (!winners.count(b.id)) continue;
      const Direction3 up = direction3(axis, true);
      a[b.id] = directional_block(input, inst.region, b, up, inst.d)
                    ? direction3(axis, false)
                    : up;
    }
    if (!best || extended_count(a) > extended_count(*best)) best = std::move(a);
  }
  return make_solution3(std::move(*best), "boxes-general", ratio);
}

inline void require_disjoint(const Instance3& inst) {
  for (std::size_t i = 0; i < inst.boxes.size(); ++i) {
    for (std::size_t j = i + 1; j < inst.boxes.size(); ++j) {
      if (inst.boxes[i].overlaps(inst.boxes[j])) {
        throw EscapeError(ErrorKind::kDisjointness,
                          "boxes " + std::to_string(inst.boxes[i].id) + " and " +
                              std::to_string(inst.boxes[j].id) + " overlap");
      }
    }
  }
}

// Per direction: d-1 rounds of independent-set extraction over the
// footprints of the boxes free on that side, each round removing its winners
// from the pool, so every footprint point is covered at most d-1 times.
// With d = 1 a single round is taken; unblocked disjoint boxes then have
// empty prisms beyond them. Best of six, in x+, x-, y+, y-, z+, z- order.
inline Solution3 solve_boxes_disjoint(const Instance3& inst, const MisPlugin& plugin) {
  validate(inst);
  require_disjoint(inst);
  const std::string ratio = plugin.exact ? std::to_string(6 * inst.d) : "heuristic";
  const DensityGrid3 input = DensityGrid3::for_boxes(inst.region, inst.boxes);
  const int rounds = std::max(1, inst.d - 1);
  std::optional<Assignment3> best;
  for (Direction3 dir : kAllDirections3) {
    std::vector<Box3> pool;
    for (const Box3& b : inst.boxes) {
      if (!directional_block(input, inst.region, b, dir, inst.d)) pool.push_back(b);
    }
    std::vector<Rect> chosen;
    Assignment3 a = empty_assignment(inst);
    for (int r = 0; r < rounds && !pool.empty(); ++r) {
      const std::vector<Rect> feet = project_boxes(pool, axis_of(dir));
      const std::set<Id> won = plugin.solve(feet);
      for (const Rect& f : feet) {
        if (won.count(f.id)) chosen.push_back(f);
      }
      std::erase_if(pool, [&](const Box3& b) { return won.count(b.id) > 0; });
      for (Id id : won) a[id] = dir;
    }
    if (max_density(chosen).max_density > rounds) {
      throw std::logic_error("footprint packing deeper than d-1");
    }
    if (!best || extended_count(a) > extended_count(*best)) best = std::move(a);
  }
  return make_solution3(std::move(*best), "boxes-disjoint", ratio);
}

}  // namespace rect_escape

#endif  // RECT_ESCAPE_BOXES_HPP_
