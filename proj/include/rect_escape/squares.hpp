// Unit squares on an m x m grid (row 1 at the bottom, column 1 at the left):
// cell densities, the per-axis optimal 2-approximation and an exact
// backtracking search for gadget-scale instances.
#ifndef RECT_ESCAPE_SQUARES_HPP_
#define RECT_ESCAPE_SQUARES_HPP_

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <unordered_set>
#include <vector>

#include "rect_escape/approx.hpp"
#include "rect_escape/exact.hpp"
#include "rect_escape/geometry.hpp"

namespace rect_escape {

struct GridSquare {
  Id id = 0;
  int row = 1;
  int col = 1;
  friend bool operator==(const GridSquare&, const GridSquare&) = default;
};

// Several squares may share a cell; density counts multiplicity.
struct GridInstance {
  int m = 1;
  std::vector<GridSquare> squares;
  int d = 2;
  std::optional<int> k;
};

using GridAssignment = Assignment;

inline void validate(const GridInstance& g) {
  if (g.m < 1) throw EscapeError(ErrorKind::kInvalidInstance, "grid side must be >= 1");
  if (g.d < 1) throw EscapeError(ErrorKind::kInvalidInstance, "d must be >= 1");
  std::unordered_set<Id> seen;
  for (const GridSquare& s : g.squares) {
    if (s.row < 1 || s.row > g.m || s.col < 1 || s.col > g.m) {
      throw EscapeError(ErrorKind::kInvalidInstance,
                        "square " + std::to_string(s.id) + " is off the grid");
    }
    if (!seen.insert(s.id).second) {
      throw EscapeError(ErrorKind::kInvalidInstance,
                        "duplicate square id " + std::to_string(s.id));
    }
  }
}

// Maps column to x and row to y: the square at (row, col) becomes the unit
// rect [col, col+1) x [row, row+1) inside [1, m+1)^2.
inline Instance to_rect_instance(const GridInstance& g) {
  Instance inst;
  inst.region = {1, 1, static_cast<Coord>(g.m) + 1, static_cast<Coord>(g.m) + 1};
  inst.d = g.d;
  inst.k = g.k;
  for (const GridSquare& s : g.squares) {
    inst.rects.push_back({s.id, s.col, s.row, static_cast<Coord>(s.col) + 1,
                          static_cast<Coord>(s.row) + 1});
  }
  return inst;
}

namespace detail {

class CellCounts {
 public:
  explicit CellCounts(int m) : m_(m), cells_(static_cast<std::size_t>(m) * m, 0) {}
  int& at(int row, int col) {
    return cells_[static_cast<std::size_t>(row - 1) * m_ + (col - 1)];
  }
  int at(int row, int col) const {
    return cells_[static_cast<std::size_t>(row - 1) * m_ + (col - 1)];
  }

  // Calls f(row, col) for every cell strictly beyond (row, col) toward dir.
  template <typename F>
  void beyond(int row, int col, Direction dir, F&& f) const {
    switch (dir) {
      case Direction::kUp: for (int r = row + 1; r <= m_; ++r) f(r, col); break;
      case Direction::kDown: for (int r = row - 1; r >= 1; --r) f(r, col); break;
      case Direction::kLeft: for (int c = col - 1; c >= 1; --c) f(row, c); break;
      case Direction::kRight: for (int c = col + 1; c <= m_; ++c) f(row, c); break;
    }
  }

  void add_extension(int row, int col, Direction dir, int delta) {
    beyond(row, col, dir, [&](int r, int c) { at(r, c) += delta; });
  }

  bool extension_fits(int row, int col, Direction dir, int d) const {
    bool ok = true;
    beyond(row, col, dir, [&](int r, int c) { ok = ok && at(r, c) < d; });
    return ok;
  }

  int max_cell() const {
    int best = 0;
    for (int v : cells_) best = std::max(best, v);
    return best;
  }

  int m() const { return m_; }

 private:
  int m_;
  std::vector<int> cells_;
};

inline CellCounts input_counts(const GridInstance& g) {
  CellCounts counts(g.m);
  for (const GridSquare& s : g.squares) ++counts.at(s.row, s.col);
  return counts;
}

}  // namespace detail

inline int input_multiplicity(const GridInstance& g) {
  return detail::input_counts(g).max_cell();
}

// Witness is (x, y) = (col, row) of the smallest maximizing cell in column-
// then-row order, matching max_density on to_rect_instance.
inline DensityReport grid_density(const GridInstance& g, const GridAssignment& a) {
  validate(g);
  std::map<Id, Choice> choice;
  for (const GridSquare& s : g.squares) choice[s.id] = std::nullopt;
  for (const auto& [id, c] : a) {
    auto it = choice.find(id);
    if (it == choice.end()) {
      throw EscapeError(ErrorKind::kDomainMismatch,
                        "assignment names unknown square id " + std::to_string(id));
    }
    it->second = c;
  }
  detail::CellCounts counts = detail::input_counts(g);
  for (const GridSquare& s : g.squares) {
    if (const Choice& c = choice[s.id]) counts.add_extension(s.row, s.col, *c, 1);
  }
  DensityReport rep;
  for (int col = 1; col <= g.m; ++col) {
    for (int row = 1; row <= g.m; ++row) {
      if (counts.at(row, col) > rep.max_density) {
        rep.max_density = counts.at(row, col);
        rep.witness = std::make_pair(static_cast<Coord>(col), static_cast<Coord>(row));
      }
    }
  }
  return rep;
}

inline void require_grid_feasible_input(const GridInstance& g) {
  if (input_multiplicity(g) > g.d) {
    throw EscapeError(ErrorKind::kInfeasibleInput,
                      "a cell holds more than d squares");
  }
}

// Optimal among assignments that only use the two directions of `axis`:
// each line takes its d outermost squares toward either end. Coincident
// squares are taken lower id first.
inline Solution axis_optimal_squares(const GridInstance& g, Axis axis) {
  validate(g);
  require_grid_feasible_input(g);
  const bool vertical = axis == Axis::kVertical;
  std::map<int, std::vector<const GridSquare*>> lines;
  for (const GridSquare& s : g.squares) lines[vertical ? s.col : s.row].push_back(&s);
  Assignment a;
  for (const GridSquare& s : g.squares) a[s.id] = std::nullopt;
  const Direction far = vertical ? Direction::kUp : Direction::kRight;
  const Direction near = vertical ? Direction::kDown : Direction::kLeft;
  for (auto& [line, members] : lines) {
    auto pos = [&](const GridSquare* s) { return vertical ? s->row : s->col; };
    std::sort(members.begin(), members.end(),
              [&](const GridSquare* x, const GridSquare* y) {
                return pos(x) != pos(y) ? pos(x) > pos(y) : x->id < y->id;
              });
    const std::size_t ups = std::min<std::size_t>(g.d, members.size());
    for (std::size_t i = 0; i < ups; ++i) a[members[i]->id] = far;
    std::vector<const GridSquare*> rest(members.begin() + ups, members.end());
    std::sort(rest.begin(), rest.end(),
              [&](const GridSquare* x, const GridSquare* y) {
                return pos(x) != pos(y) ? pos(x) < pos(y) : x->id < y->id;
              });
    const std::size_t downs = std::min<std::size_t>(g.d, rest.size());
    for (std::size_t i = 0; i < downs; ++i) a[rest[i]->id] = near;
  }
  Solution s;
  s.assignment = std::move(a);
  s.extended_count = extended_count(s.assignment);
  s.algorithm_tag = vertical ? "square-vertical" : "square-horizontal";
  s.claimed_ratio = "exact";
  return s;
}

inline Solution two_approx(const GridInstance& g) {
  Solution v = axis_optimal_squares(g, Axis::kVertical);
  Solution h = axis_optimal_squares(g, Axis::kHorizontal);
  Solution best = h.extended_count > v.extended_count ? std::move(h) : std::move(v);
  best.algorithm_tag = "square2x";
  best.claimed_ratio = "2";
  return best;
}

enum class BacktrackMode : std::uint8_t { kAll, kMaximize };

// Bit per direction (1 << index_of(dir)) plus kAllowNone for "not extended".
inline constexpr std::uint8_t kAllowNone = 1u << 4;
inline constexpr std::uint8_t kAllowAll = 0x1F;

inline constexpr std::uint8_t allow_only(Direction dir) {
  return static_cast<std::uint8_t>(1u << index_of(dir));
}

struct BacktrackResult {
  // kAll: can every square move. kMaximize: kYes once done, kNo when masks
  // that forbid staying put leave no completion at all.
  Verdict verdict = Verdict::kNo;
  int rho = 0;                     // kMaximize only
  std::optional<GridAssignment> witness;
  long long nodes = 0;
};

// Depth-first search that always branches on the square with the fewest
// legal choices. In kAll mode a square with no legal direction ends the
// branch; in kMaximize mode the bound is current + squares still movable.
inline BacktrackResult exact_backtracking(
    const GridInstance& g, BacktrackMode mode,
    long long node_budget = kDefaultNodeBudget,
    const std::map<Id, std::uint8_t>& allowed = {}) {
  validate(g);
  require_grid_feasible_input(g);
  const std::size_t n = g.squares.size();
  std::vector<std::uint8_t> mask(n, kAllowAll);
  for (std::size_t i = 0; i < n; ++i) {
    auto it = allowed.find(g.squares[i].id);
    if (it != allowed.end()) mask[i] = it->second;
  }
  detail::CellCounts counts = detail::input_counts(g);
  std::vector<Choice> cur(n), best_choices(n);
  std::vector<bool> done(n, false);
  BacktrackResult res;
  int best = -1;
  bool exhausted = false;

  auto legal = [&](std::size_t i) {
    std::uint8_t bits = 0;
    for (Direction dir : kAllDirections) {
      if ((mask[i] & allow_only(dir)) &&
          counts.extension_fits(g.squares[i].row, g.squares[i].col, dir, g.d)) {
        bits |= allow_only(dir);
      }
    }
    return bits;
  };

  auto dfs = [&](auto&& self, std::size_t placed, int count) -> bool {
    if (++res.nodes > node_budget) {
      exhausted = true;
      return false;
    }
    std::size_t pick = n;
    int pick_options = 1 << 20;
    std::uint8_t pick_bits = 0;
    int movable = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      const std::uint8_t bits = legal(i);
      const int options = std::popcount(bits) + ((mode == BacktrackMode::kMaximize &&
                                                  (mask[i] & kAllowNone)) ? 1 : 0);
      movable += bits != 0;
      if (options == 0) {
        // Neither a direction nor staying put is allowed for this square.
        return false;
      }
      if (options < pick_options) {
        pick = i;
        pick_options = options;
        pick_bits = bits;
      }
    }
    if (pick == n) {
      if (mode == BacktrackMode::kAll) {
        best_choices = cur;
        return true;
      }
      if (count > best) {
        best = count;
        best_choices = cur;
      }
      return false;
    }
    if (mode == BacktrackMode::kMaximize && count + movable <= best) return false;
    const GridSquare& s = g.squares[pick];
    done[pick] = true;
    for (Direction dir : kAllDirections) {
      if (!(pick_bits & allow_only(dir))) continue;
      counts.add_extension(s.row, s.col, dir, 1);
      cur[pick] = dir;
      const bool stop = self(self, placed + 1, count + 1);
      cur[pick].reset();
      counts.add_extension(s.row, s.col, dir, -1);
      if (stop || exhausted) {
        done[pick] = false;
        return stop;
      }
    }
    bool stop = false;
    if (mode == BacktrackMode::kMaximize && (mask[pick] & kAllowNone)) {
      stop = self(self, placed + 1, count);
    }
    done[pick] = false;
    return stop;
  };
  const bool found = dfs(dfs, 0, 0);
  auto to_assignment = [&]() {
    GridAssignment a;
    for (std::size_t i = 0; i < n; ++i) a[g.squares[i].id] = best_choices[i];
    return a;
  };
  if (exhausted) {
    res.verdict = Verdict::kInconclusive;
    return res;
  }
  if (mode == BacktrackMode::kAll) {
    res.verdict = found ? Verdict::kYes : Verdict::kNo;
    if (found) {
      res.witness = to_assignment();
      res.rho = static_cast<int>(n);
    }
  } else if (best >= 0) {
    res.verdict = Verdict::kYes;
    res.rho = best;
    res.witness = to_assignment();
  }
  return res;
}

// The FPT procedure on the rect view of a square grid. Grids may sit at
// density d, so the x- and y-greedy answers are density-checked before use.
inline FptTrace fpt_solve_grid(const GridInstance& g, int k) {
  validate(g);
  if (k < 0) throw EscapeError(ErrorKind::kParameter, "k must be >= 0");
  require_grid_feasible_input(g);
  return detail::fpt_core(to_rect_instance(g), k, true);
}

}  // namespace rect_escape

#endif  // RECT_ESCAPE_SQUARES_HPP_
