// Seeded random instance generators. Every draw goes through SplitMix64, so
// a seed reproduces the same instance on any platform.
#ifndef RECT_ESCAPE_GENERATE_HPP_
#define RECT_ESCAPE_GENERATE_HPP_

#include <algorithm>
#include <optional>
#include <vector>

#include "rect_escape/boxes.hpp"
#include "rect_escape/geometry.hpp"
#include "rect_escape/rng.hpp"
#include "rect_escape/squares.hpp"

namespace rect_escape {

inline constexpr int kPlacementAttempts = 200;

struct RandomRectParams {
  int n = 8;
  Coord coord_max = 20;  // region is [0, coord_max]^2
  Coord max_side = 6;
  int d = 2;
  bool disjoint = false;
  std::optional<int> max_input_density;  // rejection bound on the input
};

// Rects that cannot be placed within kPlacementAttempts draws are skipped,
// so the result may hold fewer than n rects; ids are 1..count.
inline Instance random_rect_instance(const RandomRectParams& params, std::uint64_t seed) {
  if (params.n < 0 || params.coord_max < 1 || params.max_side < 1 || params.d < 1) {
    throw EscapeError(ErrorKind::kParameter, "bad random-rect parameters");
  }
  SplitMix64 rng(seed);
  Instance inst;
  inst.region = {0, 0, params.coord_max, params.coord_max};
  inst.d = params.d;
  for (int i = 0; i < params.n; ++i) {
    for (int attempt = 0; attempt < kPlacementAttempts; ++attempt) {
      const Coord x0 = rng.uniform_int(0, params.coord_max - 1);
      const Coord y0 = rng.uniform_int(0, params.coord_max - 1);
      const Coord w = rng.uniform_int(1, params.max_side);
      const Coord h = rng.uniform_int(1, params.max_side);
      const Rect r{static_cast<Id>(inst.rects.size() + 1), x0, y0,
                   std::min(params.coord_max, x0 + w), std::min(params.coord_max, y0 + h)};
      if (params.disjoint &&
          std::any_of(inst.rects.begin(), inst.rects.end(),
                      [&](const Rect& o) { return o.overlaps(r); })) {
        continue;
      }
      if (params.max_input_density) {
        std::vector<Rect> trial = inst.rects;
        trial.push_back(r);
        if (max_density(trial).max_density > *params.max_input_density) continue;
      }
      inst.rects.push_back(r);
      break;
    }
  }
  return inst;
}

struct RandomGridParams {
  int m = 6;
  int n = 8;
  int d = 2;
};

// Squares are drawn uniformly over cells; a draw that would put more than d
// squares in one cell is redrawn, and skipped after kPlacementAttempts.
inline GridInstance random_grid_instance(const RandomGridParams& params, std::uint64_t seed) {
  if (params.m < 1 || params.n < 0 || params.d < 1) {
    throw EscapeError(ErrorKind::kParameter, "bad random-grid parameters");
  }
  SplitMix64 rng(seed);
  GridInstance g;
  g.m = params.m;
  g.d = params.d;
  std::vector<int> count(static_cast<std::size_t>(params.m) * params.m, 0);
  for (int i = 0; i < params.n; ++i) {
    for (int attempt = 0; attempt < kPlacementAttempts; ++attempt) {
      const int row = static_cast<int>(rng.uniform_int(1, params.m));
      const int col = static_cast<int>(rng.uniform_int(1, params.m));
      int& c = count[static_cast<std::size_t>(row - 1) * params.m + (col - 1)];
      if (c >= params.d) continue;
      ++c;
      g.squares.push_back({static_cast<Id>(g.squares.size() + 1), row, col});
      break;
    }
  }
  return g;
}

struct RandomBoxParams {
  int n = 6;
  Coord coord_max = 8;
  Coord max_side = 4;
  int d = 2;
  bool disjoint = false;
  std::optional<int> max_input_density;
};

inline Instance3 random_box_instance(const RandomBoxParams& params, std::uint64_t seed) {
  if (params.n < 0 || params.coord_max < 1 || params.max_side < 1 || params.d < 1) {
    throw EscapeError(ErrorKind::kParameter, "bad random-box parameters");
  }
  SplitMix64 rng(seed);
  Instance3 inst;
  inst.region.hi = {params.coord_max, params.coord_max, params.coord_max};
  inst.d = params.d;
  for (int i = 0; i < params.n; ++i) {
    for (int attempt = 0; attempt < kPlacementAttempts; ++attempt) {
      Box3 b;
      b.id = static_cast<Id>(inst.boxes.size() + 1);
      for (int a = 0; a < 3; ++a) {
        b.lo[a] = rng.uniform_int(0, params.coord_max - 1);
        b.hi[a] = std::min(params.coord_max, b.lo[a] + rng.uniform_int(1, params.max_side));
      }
      if (params.disjoint &&
          std::any_of(inst.boxes.begin(), inst.boxes.end(),
                      [&](const Box3& o) { return o.overlaps(b); })) {
        continue;
      }
      if (params.max_input_density) {
        std::vector<Box3> trial = inst.boxes;
        trial.push_back(b);
        if (max_density(inst.region, trial).max_density > *params.max_input_density) continue;
      }
      inst.boxes.push_back(b);
      break;
    }
  }
  return inst;
}

}  // namespace rect_escape

#endif  // RECT_ESCAPE_GENERATE_HPP_
