// Instance generators for the two hardness constructions: NAE-3SAT (at most
// three occurrences per variable) to the all-squares grid question, and
// multicolored clique to the constrained rectangle variant. Each comes with
// a forward witness builder and a label for every placed object.
#ifndef RECT_ESCAPE_REDUCTIONS_HPP_
#define RECT_ESCAPE_REDUCTIONS_HPP_

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "rect_escape/geometry.hpp"
#include "rect_escape/squares.hpp"

namespace rect_escape {

using RoleMap = std::map<Id, std::string>;

// ---------------------------------------------------------------- NAE-SAT

// Variables are 1-based; all literals positive.
struct NaeFormula {
  int num_vars = 0;
  std::vector<std::vector<int>> clauses;
};

inline void validate(const NaeFormula& phi) {
  if (phi.num_vars < 1) throw EscapeError(ErrorKind::kInvalidInstance, "need >= 1 variable");
  std::vector<int> occurrences(phi.num_vars + 1, 0);
  for (const auto& c : phi.clauses) {
    if (c.size() < 2 || c.size() > 3) {
      throw EscapeError(ErrorKind::kInvalidInstance, "clauses need 2 or 3 variables");
    }
    std::set<int> distinct;
    for (int v : c) {
      if (v < 1 || v > phi.num_vars) {
        throw EscapeError(ErrorKind::kInvalidInstance, "clause names unknown variable");
      }
      if (!distinct.insert(v).second) {
        throw EscapeError(ErrorKind::kInvalidInstance, "variable repeated in a clause");
      }
      if (++occurrences[v] > 3) {
        throw EscapeError(ErrorKind::kInvalidInstance,
                          "variable " + std::to_string(v) + " occurs in more than 3 clauses");
      }
    }
  }
}

// tau[v-1] is the value of variable v.
inline bool nae_satisfies(const NaeFormula& phi, const std::vector<bool>& tau) {
  for (const auto& c : phi.clauses) {
    bool any_true = false, any_false = false;
    for (int v : c) (tau.at(v - 1) ? any_true : any_false) = true;
    if (!any_true || !any_false) return false;
  }
  return true;
}

inline constexpr int kNaeBruteCap = 20;

inline bool nae_brute(const NaeFormula& phi) {
  validate(phi);
  if (phi.num_vars > kNaeBruteCap) {
    throw EscapeError(ErrorKind::kSize, "nae_brute is capped at 20 variables");
  }
  std::vector<bool> tau(phi.num_vars);
  for (std::uint32_t mask = 0; mask < (1u << phi.num_vars); ++mask) {
    for (int v = 0; v < phi.num_vars; ++v) tau[v] = (mask >> v) & 1u;
    if (nae_satisfies(phi, tau)) return true;
  }
  return false;
}

struct NaeGadgetIds {
  std::array<Id, 3> s{};           // variable squares
  std::array<Id, 4> copy_col{};    // above the variable squares
  std::array<Id, 4> copy_row{};    // right of the variable squares
  std::array<Id, 4> blocker{};     // on the diagonal
  std::array<Id, 4> anchor_row{};  // left of each blocker, blocked up and down
  std::array<Id, 4> anchor_col{};  // below each blocker, blocked left and right
};

struct NaeClauseIds {
  std::vector<Id> up;     // one per literal, in the column of its variable square
  std::vector<Id> right;  // one per literal, in the row of its variable square
  std::optional<Id> p;    // two-literal clauses only
  std::optional<Id> q;
};

struct NaeArtifact {
  GridInstance instance;
  RoleMap roles;
  std::vector<std::string> notes;  // layout adjustments (slack, grid side)
  std::vector<NaeGadgetIds> gadgets;
  std::vector<NaeClauseIds> clauses;
  std::map<Id, Direction> guard_side;  // the border each guard hugs
  std::map<Id, Id> guard_target;       // the square whose block placed it
};

namespace detail {

class NaeBuilder {
 public:
  explicit NaeBuilder(NaeArtifact& art) : art_(art) {}

  // Layout coordinates: x is the column, y the row, both from 0. Grid
  // row/column 1 is reserved for guards, so (x, y) lands at col x+2, row y+2.
  Id place(int x, int y, std::string role) {
    const Id id = next_id_++;
    art_.instance.squares.push_back({id, y + 2, x + 2});
    art_.roles[id] = std::move(role);
    return id;
  }

  // Guards are placed after every gadget so that the grid side is known.
  void block(Id target, Direction side) { requests_.push_back({target, side, true}); }
  void partial_block(Id target, Direction side) { requests_.push_back({target, side, false}); }

  void finish() {
    int top = 1;
    for (const GridSquare& s : art_.instance.squares) top = std::max({top, s.row, s.col});
    const int m = top + 1;
    art_.instance.m = m;
    art_.notes.push_back("grid side " + std::to_string(m));
    std::map<Id, GridSquare> where;
    for (const GridSquare& s : art_.instance.squares) where[s.id] = s;
    // Guard count per (side, line); 0, 1 (partial) or 2 (full).
    std::map<std::pair<int, int>, int> line_guards;
    for (const Request& req : requests_) {
      const GridSquare& s = where.at(req.target);
      const bool vertical = axis_of(req.side) == Axis::kVertical;
      const int line = vertical ? s.col : s.row;
      int& have = line_guards[{index_of(req.side), line}];
      const int want = req.full ? 2 : 1;
      if (have == want) continue;
      if (have != 0) {
        throw EscapeError(ErrorKind::kInvalidInstance,
                          "line needs both a full and a partial block");
      }
      have = want;
      int row = s.row, col = s.col;
      switch (req.side) {
        case Direction::kUp: row = m; break;
        case Direction::kDown: row = 1; break;
        case Direction::kLeft: col = 1; break;
        case Direction::kRight: col = m; break;
      }
      for (int copy = 0; copy < want; ++copy) {
        const Id id = next_id_++;
        art_.instance.squares.push_back({id, row, col});
        art_.roles[id] = std::string("guard-") + to_string(req.side) + "[" +
                         (vertical ? "col " : "row ") + std::to_string(line) + "]#" +
                         std::to_string(copy + 1);
        art_.guard_side[id] = req.side;
        art_.guard_target[id] = req.target;
      }
    }
  }

 private:
  struct Request {
    Id target;
    Direction side;
    bool full;
  };
  NaeArtifact& art_;
  Id next_id_ = 1;
  std::vector<Request> requests_;
};

inline std::string idx(int i) { return std::to_string(i); }

}  // namespace detail

// Gadget i sits at (o_i, o_i) with o_1 = 0 and o_{i+1} = o_i + 25 + slack_i,
// where slack_i is two empty lines per two-literal clause whose lower
// variable is i; the dummy squares P and Q of that clause use them.
inline NaeArtifact reduce_naesat(const NaeFormula& phi) {
  validate(phi);
  NaeArtifact art;
  art.instance.d = 2;
  detail::NaeBuilder b(art);
  const int n = phi.num_vars;

  std::vector<int> slack(n, 0);
  std::vector<int> pair_rank(phi.clauses.size(), -1);
  for (std::size_t j = 0; j < phi.clauses.size(); ++j) {
    const auto& c = phi.clauses[j];
    if (c.size() != 2) continue;
    const int low = std::min(c[0], c[1]) - 1;
    pair_rank[j] = slack[low] / 2;
    slack[low] += 2;
    art.notes.push_back("clause " + detail::idx(static_cast<int>(j) + 1) +
                        ": envelope of v" + detail::idx(low + 1) + " widened by 2");
  }
  std::vector<int> origin(n, 0);
  for (int i = 1; i < n; ++i) origin[i] = origin[i - 1] + 25 + slack[i - 1];

  art.gadgets.resize(n);
  for (int i = 0; i < n; ++i) {
    const int o = origin[i];
    const std::string tag = detail::idx(i + 1);
    NaeGadgetIds& g = art.gadgets[i];
    const std::array<std::pair<int, int>, 3> s_at{{{0, 4}, {2, 2}, {4, 0}}};
    for (int f = 0; f < 3; ++f) {
      g.s[f] = b.place(o + s_at[f].first, o + s_at[f].second,
                       "s_" + tag + "[" + detail::idx(f + 1) + "]");
    }
    const std::array<std::pair<int, int>, 4> col_at{{{0, 8}, {2, 12}, {2, 16}, {4, 20}}};
    const std::array<std::pair<int, int>, 4> row_at{{{8, 2}, {12, 4}, {16, 0}, {20, 2}}};
    for (int a = 0; a < 4; ++a) {
      const std::string sub = "[" + detail::idx(a + 1) + "]";
      g.copy_col[a] = b.place(o + col_at[a].first, o + col_at[a].second,
                              "copy-col_" + tag + sub);
      g.copy_row[a] = b.place(o + row_at[a].first, o + row_at[a].second,
                              "copy-row_" + tag + sub);
      const int p = o + 8 + 4 * a, q = o + 8 + 4 * a;
      g.blocker[a] = b.place(p, q, "blocker_" + tag + sub);
      g.anchor_row[a] = b.place(p - 2, q, "anchor-row_" + tag + sub);
      g.anchor_col[a] = b.place(p, q - 2, "anchor-col_" + tag + sub);
    }
  }

  const int top = origin[n - 1] + 25;
  std::vector<int> seen(n, 0);  // occurrences so far, picks s_i[f]
  art.clauses.resize(phi.clauses.size());
  for (std::size_t j = 0; j < phi.clauses.size(); ++j) {
    std::vector<int> vars = phi.clauses[j];
    std::vector<int> occ;
    for (int v : vars) occ.push_back(seen[v - 1]++);
    // Literal order follows the variable order, which is left to right.
    std::vector<std::size_t> order(vars.size());
    for (std::size_t x = 0; x < order.size(); ++x) order[x] = x;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t c) { return vars[a] < vars[c]; });
    const int line = top + 2 * (static_cast<int>(j) + 1) + 10;
    const std::string tag = detail::idx(static_cast<int>(j) + 1);
    NaeClauseIds& cl = art.clauses[j];
    for (std::size_t x = 0; x < order.size(); ++x) {
      const int i = vars[order[x]] - 1, f = occ[order[x]];
      const int o = origin[i];
      const int sx = o + 2 * f, sy = o + 4 - 2 * f;
      const std::string sub = "[" + detail::idx(static_cast<int>(x) + 1) + "]";
      cl.up.push_back(b.place(sx, line, "t_" + tag + sub + "^U"));
      cl.right.push_back(b.place(line, sy, "t_" + tag + sub + "^R"));
    }
    if (vars.size() == 2) {
      const int low = std::min(vars[0], vars[1]) - 1;
      const int gap = origin[low] + 25 + 2 * pair_rank[j];
      cl.p = b.place(gap, line, "P_" + tag);
      cl.q = b.place(line, gap, "Q_" + tag);
    }
  }

  for (const NaeGadgetIds& g : art.gadgets) {
    for (Id s : g.s) {
      b.block(s, Direction::kDown);
      b.block(s, Direction::kLeft);
      b.partial_block(s, Direction::kUp);
      b.partial_block(s, Direction::kRight);
    }
    for (int a = 0; a < 4; ++a) {
      b.block(g.anchor_row[a], Direction::kUp);
      b.block(g.anchor_row[a], Direction::kDown);
      b.block(g.anchor_col[a], Direction::kLeft);
      b.block(g.anchor_col[a], Direction::kRight);
    }
  }
  for (const NaeClauseIds& cl : art.clauses) {
    if (cl.p) {
      b.block(*cl.p, Direction::kUp);
      b.block(*cl.p, Direction::kDown);
      b.block(*cl.q, Direction::kLeft);
      b.block(*cl.q, Direction::kRight);
    }
  }
  b.finish();
  art.instance.k = static_cast<int>(art.instance.squares.size());
  return art;
}

// Sub-instance keeping only the squares whose id passes `keep`; roles and
// guard sides are filtered alike and the grid side is unchanged.
template <typename Keep>
NaeArtifact restrict_artifact(const NaeArtifact& art, Keep&& keep) {
  NaeArtifact out;
  out.instance.m = art.instance.m;
  out.instance.d = art.instance.d;
  out.notes = art.notes;
  for (const GridSquare& s : art.instance.squares) {
    if (!keep(s.id)) continue;
    out.instance.squares.push_back(s);
    out.roles[s.id] = art.roles.at(s.id);
    if (auto it = art.guard_side.find(s.id); it != art.guard_side.end()) {
      out.guard_side[s.id] = it->second;
      out.guard_target[s.id] = art.guard_target.at(s.id);
    }
  }
  out.instance.k = static_cast<int>(out.instance.squares.size());
  return out;
}

// The copy-gadget pattern for one value: true extends the variable squares
// right, false extends them up.
inline void nae_gadget_directions(const NaeGadgetIds& g, bool value, GridAssignment& a) {
  for (Id s : g.s) a[s] = value ? Direction::kRight : Direction::kUp;
  for (int x = 0; x < 4; ++x) {
    a[g.copy_col[x]] = Direction::kLeft;
    a[g.copy_row[x]] = Direction::kDown;
    a[g.blocker[x]] = value ? Direction::kRight : Direction::kUp;
    a[g.anchor_row[x]] = value ? Direction::kLeft : Direction::kRight;
    a[g.anchor_col[x]] = value ? Direction::kUp : Direction::kDown;
  }
}

inline GridAssignment naesat_witness(const NaeFormula& phi, const std::vector<bool>& tau) {
  validate(phi);
  if (static_cast<int>(tau.size()) != phi.num_vars) {
    throw EscapeError(ErrorKind::kWitness, "tau has the wrong length");
  }
  if (!nae_satisfies(phi, tau)) {
    throw EscapeError(ErrorKind::kWitness, "tau does not NAE-satisfy the formula");
  }
  const NaeArtifact art = reduce_naesat(phi);
  GridAssignment a;
  for (int i = 0; i < phi.num_vars; ++i) nae_gadget_directions(art.gadgets[i], tau[i], a);
  for (std::size_t j = 0; j < phi.clauses.size(); ++j) {
    std::vector<int> vars = phi.clauses[j];
    std::sort(vars.begin(), vars.end());
    const NaeClauseIds& cl = art.clauses[j];
    // The column above a true variable is free, the row right of a false one.
    auto route = [&](const std::vector<Id>& ids, bool free_value, Direction out,
                     Direction low, Direction high, const std::optional<Id>& dummy) {
      std::size_t pick = ids.size();
      for (std::size_t x = 0; x < ids.size(); ++x) {
        if (tau[vars[x] - 1] == free_value) {
          pick = x;
          break;
        }
      }
      a[ids[pick]] = out;
      bool before = true;
      for (std::size_t x = 0; x < ids.size(); ++x) {
        if (x == pick) {
          before = false;
          continue;
        }
        a[ids[x]] = before ? low : high;
      }
      if (dummy) a[*dummy] = pick == 0 ? low : high;
    };
    route(cl.up, true, Direction::kUp, Direction::kLeft, Direction::kRight, cl.p);
    route(cl.right, false, Direction::kRight, Direction::kDown, Direction::kUp, cl.q);
  }
  for (const auto& [id, side] : art.guard_side) a[id] = side;
  return a;
}

// ----------------------------------------------------- multicolored clique

struct MccGraph {
  int k = 0;
  int t = 0;
  std::vector<std::vector<int>> parts;
  std::vector<std::pair<int, int>> edges;
};

struct VertexSlot {
  int part = 0;   // 0-based
  int index = 0;  // 1-based position within the part
};

inline std::map<int, VertexSlot> vertex_slots(const MccGraph& g) {
  std::map<int, VertexSlot> slots;
  for (int i = 0; i < static_cast<int>(g.parts.size()); ++i) {
    for (int j = 0; j < static_cast<int>(g.parts[i].size()); ++j) {
      slots[g.parts[i][j]] = {i, j + 1};
    }
  }
  return slots;
}

inline void validate(const MccGraph& g) {
  if (g.k < 1 || g.t < 1) throw EscapeError(ErrorKind::kInvalidInstance, "k and t must be >= 1");
  if (static_cast<int>(g.parts.size()) != g.k) {
    throw EscapeError(ErrorKind::kInvalidInstance, "need exactly k parts");
  }
  std::set<int> vertices;
  for (const auto& part : g.parts) {
    if (static_cast<int>(part.size()) != g.t) {
      throw EscapeError(ErrorKind::kInvalidInstance, "every part needs t vertices");
    }
    for (int v : part) {
      if (!vertices.insert(v).second) {
        throw EscapeError(ErrorKind::kInvalidInstance, "vertex listed twice");
      }
    }
  }
  const auto slots = vertex_slots(g);
  std::set<std::pair<int, int>> seen;
  for (auto [u, v] : g.edges) {
    if (!slots.count(u) || !slots.count(v)) {
      throw EscapeError(ErrorKind::kInvalidInstance, "edge names unknown vertex");
    }
    if (slots.at(u).part == slots.at(v).part) {
      throw EscapeError(ErrorKind::kInvalidInstance, "edge inside a part");
    }
    if (!seen.insert(std::minmax(u, v)).second) {
      throw EscapeError(ErrorKind::kInvalidInstance, "duplicate edge");
    }
  }
}

struct MccArtifact {
  Instance instance;  // d = 2, p = k, q = k choose 2
  RoleMap roles;
  std::vector<std::string> notes;
  std::vector<std::vector<Id>> selection;  // [part][index-1]
  std::vector<Id> edge_square;             // per edge
};

// Selection rects of part i (1-based) are unit-wide, t+1 tall columns at
// (2+2j, 3+j+(2t+5)(i-1)); edge squares sit in one row at height (2t+5)^2
// and 12 apart; each edge drops two incidence rects into the bands of both
// endpoints, leaving a gap exactly at the endpoint's own selection rect.
inline MccArtifact reduce_mcc(const MccGraph& g) {
  validate(g);
  MccArtifact art;
  Instance& inst = art.instance;
  inst.d = 2;
  inst.p = g.k;
  inst.q = g.k * (g.k - 1) / 2;
  const Coord t = g.t;
  const Coord stride = 2 * t + 5;
  auto offset = [&](int part) { return stride * part; };  // 0-based part
  Id next = 1;
  auto add = [&](Coord x0, Coord y0, Coord x1, Coord y1, std::string role) {
    inst.rects.push_back({next, x0, y0, x1, y1});
    art.roles[next] = std::move(role);
    return next++;
  };

  art.selection.assign(g.k, {});
  for (int i = 0; i < g.k; ++i) {
    for (Coord j = 1; j <= t; ++j) {
      const Coord y0 = 3 + j + offset(i);
      art.selection[i].push_back(add(2 + 2 * j, y0, 3 + 2 * j, y0 + t + 1,
                                     "T_" + detail::idx(i + 1) + "[" +
                                         detail::idx(static_cast<int>(j)) + "]"));
    }
  }
  // A row at stride^2 clears every band only while k <= 2t+5 or so;
  // above that it is lifted to sit just over the top band.
  const Coord band_top = 6 + 2 * t + offset(g.k - 1);
  Coord edge_y = stride * stride;
  if (edge_y < band_top) {
    edge_y = band_top;
    art.notes.push_back("edge row lifted to " + std::to_string(edge_y));
  }
  const auto slots = vertex_slots(g);
  Coord right_edge = 4 + 2 * t;
  for (std::size_t l = 0; l < g.edges.size(); ++l) {
    const Coord ex = 3 * t + 12 * static_cast<Coord>(l + 1);
    const std::string tag = detail::idx(static_cast<int>(l) + 1);
    art.edge_square.push_back(add(ex, edge_y, ex + 1, edge_y + 1, "T_e" + tag));
    for (int end : {g.edges[l].first, g.edges[l].second}) {
      const VertexSlot s = slots.at(end);
      const Coord off = offset(s.part);
      const std::string sub =
          "_" + detail::idx(s.part + 1) + "[" + detail::idx(s.index) + "]@e" + tag;
      add(ex - 3, 4 + s.index + t + off, ex + 4, 6 + 2 * t + off, "W" + sub);
      add(ex - 3, 2 + off, ex + 4, 3 + s.index + off, "Z" + sub);
    }
    right_edge = std::max(right_edge, ex + 4);
  }

  const Coord x_max = right_edge + 2;
  const Coord y_max = edge_y + 2;
  inst.region = {0, 0, x_max, y_max};
  for (int c = 1; c <= 2; ++c) {
    add(0, 0, 1, y_max, "guard-left#" + detail::idx(c));
  }
  for (int c = 1; c <= 2; ++c) {
    add(1, y_max - 1, x_max, y_max, "guard-top#" + detail::idx(c));
  }
  add(x_max - 1, 0, x_max, y_max - 1, "H");
  for (int c = 1; c <= 2; ++c) {
    add(3, 0, 4 + 2 * t, 1, "guard-bottom#" + detail::idx(c));
  }
  add(x_max - 1, edge_y, x_max, edge_y + 1, "guard-edge-row");
  for (int i = 0; i < g.k; ++i) {
    const Coord off = offset(i);
    add(x_max - 1, 5 + 2 * t + off, x_max, 6 + 2 * t + off, "H_" + detail::idx(i + 1));
    add(x_max - 1, 2 + off, x_max, 3 + off, "H_" + detail::idx(i + 1) + "^dagger");
  }
  // Under each incidence column, left of the edge square's column: stops the
  // incidence rects going down without touching the edge square's path.
  for (std::size_t l = 0; l < g.edges.size(); ++l) {
    const Coord ex = 3 * t + 12 * static_cast<Coord>(l + 1);
    for (int c = 1; c <= 2; ++c) {
      add(ex - 3, 0, ex - 2, 1,
          "guard-incidence@e" + detail::idx(static_cast<int>(l) + 1) + "#" + detail::idx(c));
    }
  }
  art.notes.push_back("region " + std::to_string(x_max) + " x " + std::to_string(y_max));
  return art;
}

inline bool is_multicolored_clique(const MccGraph& g, const std::vector<int>& pick) {
  if (static_cast<int>(pick.size()) != g.k) return false;
  const auto slots = vertex_slots(g);
  for (int i = 0; i < g.k; ++i) {
    auto it = slots.find(pick[i]);
    if (it == slots.end() || it->second.part != i) return false;
  }
  std::set<std::pair<int, int>> edges;
  for (auto [u, v] : g.edges) edges.insert(std::minmax(u, v));
  for (int i = 0; i < g.k; ++i) {
    for (int j = i + 1; j < g.k; ++j) {
      if (!edges.count(std::minmax(pick[i], pick[j]))) return false;
    }
  }
  return true;
}

// pick[i] is the chosen vertex of part i.
inline Assignment mcc_witness(const MccGraph& g, const std::vector<int>& pick) {
  validate(g);
  if (!is_multicolored_clique(g, pick)) {
    throw EscapeError(ErrorKind::kWitness, "not a multicolored clique");
  }
  const MccArtifact art = reduce_mcc(g);
  Assignment a = empty_assignment(art.instance);
  const auto slots = vertex_slots(g);
  for (int i = 0; i < g.k; ++i) {
    a[art.selection[i][slots.at(pick[i]).index - 1]] = Direction::kRight;
  }
  const std::set<int> chosen(pick.begin(), pick.end());
  for (std::size_t l = 0; l < g.edges.size(); ++l) {
    if (chosen.count(g.edges[l].first) && chosen.count(g.edges[l].second)) {
      a[art.edge_square[l]] = Direction::kDown;
    }
  }
  return a;
}

}  // namespace rect_escape

#endif  // RECT_ESCAPE_REDUCTIONS_HPP_
