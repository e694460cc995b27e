// Exact integer geometry for rectangle escape: bodies, extensions, density
// sweeps over compressed coordinates and blocked/stuck detection.
#ifndef RECT_ESCAPE_GEOMETRY_HPP_
#define RECT_ESCAPE_GEOMETRY_HPP_

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

namespace rect_escape {

using Coord = std::int64_t;
using Id = std::int64_t;

enum class ErrorKind {
  kInvalidInstance,
  kDomainMismatch,
  kInfeasibleInput,
  kDisjointness,
  kParameter,
  kSize,
  kDensityPrecondition,
  kNumerical,
  kValidation,
  kWitness,
  kPairing,
};

class EscapeError : public std::runtime_error {
 public:
  EscapeError(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

enum class Direction : std::uint8_t { kUp = 0, kDown = 1, kLeft = 2, kRight = 3 };
enum class Axis : std::uint8_t { kVertical = 0, kHorizontal = 1 };

inline constexpr std::array<Direction, 4> kAllDirections = {
    Direction::kUp, Direction::kDown, Direction::kLeft, Direction::kRight};

inline constexpr int index_of(Direction dir) { return static_cast<int>(dir); }

inline constexpr Axis axis_of(Direction dir) {
  return (dir == Direction::kUp || dir == Direction::kDown) ? Axis::kVertical
                                                            : Axis::kHorizontal;
}

// The two directions along an axis, in preference order (Up before Down,
// Right before Left).
inline constexpr std::array<Direction, 2> directions_on(Axis axis) {
  return axis == Axis::kVertical
             ? std::array<Direction, 2>{Direction::kUp, Direction::kDown}
             : std::array<Direction, 2>{Direction::kRight, Direction::kLeft};
}

inline const char* to_string(Direction dir) {
  switch (dir) {
    case Direction::kUp: return "up";
    case Direction::kDown: return "down";
    case Direction::kLeft: return "left";
    case Direction::kRight: return "right";
  }
  return "?";
}

inline std::optional<Direction> parse_direction(std::string_view s) {
  for (Direction dir : kAllDirections) {
    if (s == to_string(dir)) return dir;
  }
  return std::nullopt;
}

struct Region {
  Coord x_min = 0, y_min = 0, x_max = 0, y_max = 0;

  bool valid() const { return x_min < x_max && y_min < y_max; }
  friend bool operator==(const Region&, const Region&) = default;
};

// Body is the half-open product [x_min, x_max) x [y_min, y_max).
struct Rect {
  Id id = 0;
  Coord x_min = 0, y_min = 0, x_max = 0, y_max = 0;

  bool valid() const { return x_min < x_max && y_min < y_max; }
  bool contains_point(Coord x, Coord y) const {
    return x_min <= x && x < x_max && y_min <= y && y < y_max;
  }
  bool contains(const Rect& o) const {
    return x_min <= o.x_min && o.x_max <= x_max && y_min <= o.y_min &&
           o.y_max <= y_max;
  }
  bool overlaps(const Rect& o) const {
    return x_min < o.x_max && o.x_min < x_max && y_min < o.y_max &&
           o.y_min < y_max;
  }
  bool inside(const Region& r) const {
    return r.x_min <= x_min && x_max <= r.x_max && r.y_min <= y_min &&
           y_max <= r.y_max;
  }
  friend bool operator==(const Rect&, const Rect&) = default;
};

using Choice = std::optional<Direction>;
// Rect id -> direction, or nullopt for "not extended". Ids of the instance
// that are absent from the map count as not extended.
using Assignment = std::map<Id, Choice>;

struct Instance {
  Region region;
  std::vector<Rect> rects;
  int d = 1;
  std::optional<int> k;
  // Targets of the constrained variant (internal horizontal / vertical).
  std::optional<int> p;
  std::optional<int> q;
};

struct DensityReport {
  int max_density = 0;
  // Lower-left corner of the lexicographically smallest (x, then y)
  // maximizing compressed cell; absent for an empty configuration.
  std::optional<std::pair<Coord, Coord>> witness;
};

inline void validate(const Instance& inst) {
  if (!inst.region.valid()) {
    throw EscapeError(ErrorKind::kInvalidInstance, "region is empty");
  }
  if (inst.d < 1) throw EscapeError(ErrorKind::kInvalidInstance, "d must be >= 1");
  std::unordered_set<Id> seen;
  for (const Rect& r : inst.rects) {
    if (!r.valid()) {
      throw EscapeError(ErrorKind::kInvalidInstance,
                        "rect " + std::to_string(r.id) + " is empty");
    }
    if (!r.inside(inst.region)) {
      throw EscapeError(ErrorKind::kInvalidInstance,
                        "rect " + std::to_string(r.id) + " leaves the region");
    }
    if (!seen.insert(r.id).second) {
      throw EscapeError(ErrorKind::kInvalidInstance,
                        "duplicate rect id " + std::to_string(r.id));
    }
  }
}

inline Rect extend(const Rect& rect, const Region& region, Direction dir) {
  Rect out = rect;
  switch (dir) {
    case Direction::kUp: out.y_max = region.y_max; break;
    case Direction::kDown: out.y_min = region.y_min; break;
    case Direction::kLeft: out.x_min = region.x_min; break;
    case Direction::kRight: out.x_max = region.x_max; break;
  }
  return out;
}

// The part of extend(rect, region, dir) that lies strictly beyond the body.
// Empty (invalid) when the rect already touches that border.
inline Rect extension_band(const Rect& rect, const Region& region,
                           Direction dir) {
  Rect band = rect;
  switch (dir) {
    case Direction::kUp: band.y_min = rect.y_max; band.y_max = region.y_max; break;
    case Direction::kDown: band.y_max = rect.y_min; band.y_min = region.y_min; break;
    case Direction::kLeft: band.x_max = rect.x_min; band.x_min = region.x_min; break;
    case Direction::kRight: band.x_min = rect.x_max; band.x_max = region.x_max; break;
  }
  return band;
}

// Dense choice vector aligned with inst.rects; throws on ids not in inst.
inline std::vector<Choice> choices_by_index(const Instance& inst,
                                            const Assignment& a) {
  std::map<Id, std::size_t> pos;
  for (std::size_t i = 0; i < inst.rects.size(); ++i) pos[inst.rects[i].id] = i;
  std::vector<Choice> out(inst.rects.size());
  for (const auto& [id, choice] : a) {
    auto it = pos.find(id);
    if (it == pos.end()) {
      throw EscapeError(ErrorKind::kDomainMismatch,
                        "assignment names unknown rect id " + std::to_string(id));
    }
    out[it->second] = choice;
  }
  return out;
}

inline Assignment assignment_from_choices(const Instance& inst,
                                          const std::vector<Choice>& choices) {
  Assignment a;
  for (std::size_t i = 0; i < inst.rects.size(); ++i) {
    a[inst.rects[i].id] = choices[i];
  }
  return a;
}

inline Assignment empty_assignment(const Instance& inst) {
  return assignment_from_choices(inst,
                                 std::vector<Choice>(inst.rects.size()));
}

inline int extended_count(const Assignment& a) {
  int n = 0;
  for (const auto& [id, c] : a) n += c.has_value();
  return n;
}

inline std::vector<Rect> apply_choices(const Instance& inst,
                                       const std::vector<Choice>& choices) {
  std::vector<Rect> out;
  out.reserve(inst.rects.size());
  for (std::size_t i = 0; i < inst.rects.size(); ++i) {
    out.push_back(choices[i] ? extend(inst.rects[i], inst.region, *choices[i])
                             : inst.rects[i]);
  }
  return out;
}

inline std::vector<Rect> apply_assignment(const Instance& inst,
                                          const Assignment& a) {
  return apply_choices(inst, choices_by_index(inst, a));
}

// Per-cell counts over a fixed compression. Every rect handed to add() or
// max_in() must have its boundaries among xs/ys.
class DensityGrid {
 public:
  DensityGrid() = default;
  DensityGrid(std::vector<Coord> xs, std::vector<Coord> ys)
      : xs_(std::move(xs)), ys_(std::move(ys)) {
    std::sort(xs_.begin(), xs_.end());
    xs_.erase(std::unique(xs_.begin(), xs_.end()), xs_.end());
    std::sort(ys_.begin(), ys_.end());
    ys_.erase(std::unique(ys_.begin(), ys_.end()), ys_.end());
    nx_ = xs_.size() > 1 ? xs_.size() - 1 : 0;
    ny_ = ys_.size() > 1 ? ys_.size() - 1 : 0;
    cells_.assign(nx_ * ny_, 0);
  }

  // Compression of an instance: all rect boundaries plus the region border,
  // so every extension is representable.
  static DensityGrid for_instance(const Instance& inst) {
    std::vector<Coord> xs{inst.region.x_min, inst.region.x_max};
    std::vector<Coord> ys{inst.region.y_min, inst.region.y_max};
    for (const Rect& r : inst.rects) {
      xs.push_back(r.x_min);
      xs.push_back(r.x_max);
      ys.push_back(r.y_min);
      ys.push_back(r.y_max);
    }
    DensityGrid g(std::move(xs), std::move(ys));
    for (const Rect& r : inst.rects) g.add(r, 1);
    return g;
  }

  std::size_t nx() const { return nx_; }
  std::size_t ny() const { return ny_; }
  const std::vector<Coord>& xs() const { return xs_; }
  const std::vector<Coord>& ys() const { return ys_; }
  int at(std::size_t i, std::size_t j) const { return cells_[i * ny_ + j]; }

  void add(const Rect& r, int delta) {
    if (!r.valid()) return;
    auto [i0, i1, j0, j1] = span_of(r);
    for (std::size_t i = i0; i < i1; ++i) {
      int* row = &cells_[i * ny_];
      for (std::size_t j = j0; j < j1; ++j) row[j] += delta;
    }
  }

  // Adds r and reports whether some covered cell now exceeds cap.
  bool add_exceeds(const Rect& r, int cap) {
    if (!r.valid()) return false;
    bool over = false;
    auto [i0, i1, j0, j1] = span_of(r);
    for (std::size_t i = i0; i < i1; ++i) {
      int* row = &cells_[i * ny_];
      for (std::size_t j = j0; j < j1; ++j) {
        if (++row[j] > cap) over = true;
      }
    }
    return over;
  }

  int max_in(const Rect& r) const {
    if (!r.valid()) return 0;
    int best = 0;
    auto [i0, i1, j0, j1] = span_of(r);
    for (std::size_t i = i0; i < i1; ++i) {
      for (std::size_t j = j0; j < j1; ++j) best = std::max(best, at(i, j));
    }
    return best;
  }

  DensityReport report() const {
    DensityReport rep;
    for (std::size_t i = 0; i < nx_; ++i) {
      for (std::size_t j = 0; j < ny_; ++j) {
        if (at(i, j) > rep.max_density) {
          rep.max_density = at(i, j);
          rep.witness = std::make_pair(xs_[i], ys_[j]);
        }
      }
    }
    return rep;
  }

 private:
  struct Span {
    std::size_t i0, i1, j0, j1;
  };
  Span span_of(const Rect& r) const {
    auto lx = [&](Coord v) {
      return static_cast<std::size_t>(
          std::lower_bound(xs_.begin(), xs_.end(), v) - xs_.begin());
    };
    auto ly = [&](Coord v) {
      return static_cast<std::size_t>(
          std::lower_bound(ys_.begin(), ys_.end(), v) - ys_.begin());
    };
    return {lx(r.x_min), lx(r.x_max), ly(r.y_min), ly(r.y_max)};
  }

  std::vector<Coord> xs_, ys_;
  std::size_t nx_ = 0, ny_ = 0;
  std::vector<int> cells_;
};

// Exact maximum coverage via coordinate compression and a 2D prefix sum
// over one representative per compressed cell.
inline DensityReport max_density(std::span<const Rect> rects) {
  DensityReport rep;
  if (rects.empty()) return rep;
  std::vector<Coord> xs, ys;
  xs.reserve(2 * rects.size());
  ys.reserve(2 * rects.size());
  for (const Rect& r : rects) {
    xs.push_back(r.x_min);
    xs.push_back(r.x_max);
    ys.push_back(r.y_min);
    ys.push_back(r.y_max);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::sort(ys.begin(), ys.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
  const std::size_t nx = xs.size(), ny = ys.size();
  std::vector<int> diff(nx * ny, 0);
  auto ix = [&](Coord v) {
    return static_cast<std::size_t>(std::lower_bound(xs.begin(), xs.end(), v) -
                                    xs.begin());
  };
  auto iy = [&](Coord v) {
    return static_cast<std::size_t>(std::lower_bound(ys.begin(), ys.end(), v) -
                                    ys.begin());
  };
  for (const Rect& r : rects) {
    std::size_t i0 = ix(r.x_min), i1 = ix(r.x_max);
    std::size_t j0 = iy(r.y_min), j1 = iy(r.y_max);
    diff[i0 * ny + j0] += 1;
    diff[i1 * ny + j0] -= 1;
    diff[i0 * ny + j1] -= 1;
    diff[i1 * ny + j1] += 1;
  }
  for (std::size_t i = 0; i < nx; ++i) {
    for (std::size_t j = 0; j < ny; ++j) {
      int v = diff[i * ny + j];
      if (i > 0) v += diff[(i - 1) * ny + j];
      if (j > 0) v += diff[i * ny + j - 1];
      if (i > 0 && j > 0) v -= diff[(i - 1) * ny + j - 1];
      diff[i * ny + j] = v;
    }
  }
  for (std::size_t i = 0; i + 1 < nx; ++i) {
    for (std::size_t j = 0; j + 1 < ny; ++j) {
      if (diff[i * ny + j] > rep.max_density) {
        rep.max_density = diff[i * ny + j];
        rep.witness = std::make_pair(xs[i], ys[j]);
      }
    }
  }
  return rep;
}

inline int input_density(const Instance& inst) {
  return max_density(inst.rects).max_density;
}

inline bool is_feasible(const Instance& inst, const Assignment& a) {
  return max_density(apply_assignment(inst, a)).max_density <= inst.d;
}

inline bool is_feasible_choices(const Instance& inst,
                                const std::vector<Choice>& choices) {
  return max_density(apply_choices(inst, choices)).max_density <= inst.d;
}

// True when the band swept by extending rect alone in dir holds a point of
// input density >= d, so that extension alone would exceed d.
inline bool directional_block(const DensityGrid& input, const Region& region,
                              const Rect& rect, Direction dir, int d) {
  return input.max_in(extension_band(rect, region, dir)) >= d;
}

inline bool directional_block(const Instance& inst, const Rect& rect,
                              Direction dir) {
  return directional_block(DensityGrid::for_instance(inst), inst.region, rect,
                           dir, inst.d);
}

inline std::set<Id> stuck_rectangles(const Instance& inst, Axis axis) {
  const DensityGrid input = DensityGrid::for_instance(inst);
  std::set<Id> out;
  for (const Rect& r : inst.rects) {
    bool stuck = true;
    for (Direction dir : directions_on(axis)) {
      stuck = stuck && directional_block(input, inst.region, r, dir, inst.d);
    }
    if (stuck) out.insert(r.id);
  }
  return out;
}

}  // namespace rect_escape

#endif  // RECT_ESCAPE_GEOMETRY_HPP_
