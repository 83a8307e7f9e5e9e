#pragma once

// The oblivious per-robot decision function: a pure map from a RobotView to
// a Move. decide() dispatches between the entry, gather and boundary rules
// exactly as the top-level guard prescribes; the robot keeps no state across
// rounds, so replaying a view always reproduces the move.
//
// Free choices (the entry step "through any edge" and equal-length approach
// paths) are resolved by canonicalizing over the grid's symmetry group, which
// keeps decide() equivariant under every rectangle symmetry. The one
// exception is an approach tie on a view fixed by a diagonal symmetry of a
// square grid: no oriented step can be equivariant there, and waiting would
// stall forever against an already-fixed resource, so the tie breaks along x.

#include <array>
#include <climits>
#include <optional>
#include <vector>

#include "dynrv/configuration.hpp"

namespace dynrv {

enum class MoveKind { Stay, Step };

struct Move {
  MoveKind kind = MoveKind::Stay;
  Vertex target;  // meaningful iff kind == Step

  static Move stay() { return {MoveKind::Stay, {}}; }
  static Move step(Vertex t) { return {MoveKind::Step, t}; }

  friend bool operator==(const Move& a, const Move& b) {
    if (a.kind != b.kind) return false;
    return a.kind == MoveKind::Stay || a.target == b.target;
  }
};

inline Move transform_move(const GridSymmetry& s, int rows, int cols, const Move& m) {
  if (m.kind == MoveKind::Stay) return m;
  return Move::step(apply_symmetry(s, rows, cols, m.target));
}

namespace detail {

using ViewMoveKey = std::array<int, 11>;

inline ViewMoveKey view_move_key(const RobotView& v, Vertex target) {
  return {v.at_door ? 1 : 0,
          v.self.x,
          v.self.y,
          v.other ? 1 : 0,
          v.other ? v.other->x : -1,
          v.other ? v.other->y : -1,
          v.other_on_res ? 1 : 0,
          v.res.x,
          v.res.y,
          target.x,
          target.y};
}

// The advance vertex along `l` toward the resource's projection.
inline Vertex advance_along(Line l, Vertex p, Vertex res) {
  int dir = l.along(res) > l.along(p) ? 1 : -1;
  return l.axis == Axis::Row ? Vertex{p.x + dir, p.y} : Vertex{p.x, p.y + dir};
}

// The unique boundary line through p, if there is exactly one.
inline std::optional<Line> sole_boundary_line(int rows, int cols, Vertex p) {
  std::optional<Line> found;
  auto add = [&](Line l) -> bool {
    if (found) return false;
    found = l;
    return true;
  };
  bool unique = true;
  if (p.y == 0) unique = add(row_line(0)) && unique;
  if (p.y == rows - 1) unique = add(row_line(rows - 1)) && unique;
  if (p.x == 0) unique = add(col_line(0)) && unique;
  if (p.x == cols - 1) unique = add(col_line(cols - 1)) && unique;
  if (!found || !unique) return std::nullopt;
  return found;
}

}  // namespace detail

// Deterministic choice among symmetry-equivalent candidate steps: each
// candidate is ranked by the lexicographically least serialization of
// (view, candidate) over the grid's symmetry group. Returns nullopt when two
// candidates canonicalize identically, i.e. a symmetry of the view itself
// swaps them and no equivariant choice exists.
inline std::optional<Vertex> equivariant_pick(const RobotView& v,
                                              const std::vector<Vertex>& candidates) {
  auto group = grid_symmetries(v.rows, v.cols);
  std::optional<Vertex> best;
  detail::ViewMoveKey best_key{};
  bool tie = false;
  for (Vertex c : candidates) {
    std::optional<detail::ViewMoveKey> canon;
    for (const auto& s : group) {
      auto k = detail::view_move_key(transform_view(s, v),
                                     apply_symmetry(s, v.rows, v.cols, c));
      if (!canon || k < *canon) canon = k;
    }
    if (!best || *canon < best_key) {
      best = c;
      best_key = *canon;
      tie = false;
    } else if (*canon == best_key) {
      tie = true;
    }
  }
  return tie ? std::nullopt : best;
}

// One step along a shortest path to the (fixed) resource that never enters a
// corner other than the target itself: take the axis with the larger
// remaining gap, substituting the other axis when the step would land on a
// non-target corner.
inline Move approach_path_step(const RobotView& v) {
  Vertex target = v.res;
  int dx = target.x - v.self.x;
  int dy = target.y - v.self.y;
  if (dx == 0 && dy == 0) return Move::stay();
  auto blocked = [&](Vertex u) {
    return is_corner_vertex(v.rows, v.cols, u) && u != target;
  };
  std::optional<Vertex> xstep, ystep;
  if (dx != 0) {
    Vertex u{v.self.x + (dx > 0 ? 1 : -1), v.self.y};
    if (!blocked(u)) xstep = u;
  }
  if (dy != 0) {
    Vertex u{v.self.x, v.self.y + (dy > 0 ? 1 : -1)};
    if (!blocked(u)) ystep = u;
  }
  if (!xstep && !ystep) return Move::stay();  // cannot arise for m, n >= 3
  if (!xstep) return Move::step(*ystep);
  if (!ystep) return Move::step(*xstep);
  if (std::abs(dx) > std::abs(dy)) return Move::step(*xstep);
  if (std::abs(dy) > std::abs(dx)) return Move::step(*ystep);
  if (auto pick = equivariant_pick(v, {*xstep, *ystep})) return Move::step(*pick);
  return Move::step(*xstep);  // diagonal-fixed view: see header comment
}

// Entry guard as observable from a view: some robot at a corner, no robot
// on the resource, and the other robot absent from the grid or adjacent to
// the corner robot.
inline bool view_entry_guard(const RobotView& v) {
  if (v.other_on_res) return false;
  if (is_corner_vertex(v.rows, v.cols, v.self) &&
      (!v.other || adjacent(*v.other, v.self)))
    return true;
  return v.other && is_corner_vertex(v.rows, v.cols, *v.other) &&
         adjacent(v.self, *v.other);
}

inline bool view_init_gather(const RobotView& v) {
  return v.other && positions_init_gather(v.self, *v.other, v.res);
}

inline Move decide_entry(const RobotView& v) {
  if (v.at_door) {
    auto nbrs = grid_neighbors(v.rows, v.cols, v.self);
    if (!v.other) {
      // Free edge choice. Prefer the neighbor nearer the resource; break a
      // remaining tie canonically. On a view symmetric across the door's
      // diagonal neither edge can be chosen equivariantly, so wait: the
      // resource must move within T_f and its move breaks the symmetry.
      int dbest = INT_MAX;
      for (Vertex u : nbrs) dbest = std::min(dbest, hop_distance(u, v.res));
      std::vector<Vertex> cands;
      for (Vertex u : nbrs)
        if (hop_distance(u, v.res) == dbest) cands.push_back(u);
      if (cands.size() == 1) return Move::step(cands.front());
      if (auto pick = equivariant_pick(v, cands)) return Move::step(*pick);
      return Move::stay();
    }
    for (Vertex u : nbrs)
      if (u != *v.other) return Move::step(u);
    return Move::stay();
  }
  // Off the door: freeze while the other robot occupies a corner.
  return Move::stay();
}

inline Move decide_boundary(const RobotView& v) {
  if (v.other_on_res) return approach_path_step(v);
  if (!v.other) return Move::stay();
  auto bd = detail::sole_boundary_line(v.rows, v.cols, v.self);
  if (!bd) return Move::stay();  // not on a unique boundary: nothing to do here
  int dist_self = std::abs(bd->along(v.self) - bd->along(v.res));
  if (dist_self == 0) return Move::stay();  // both neighbors qualify; hold
  Vertex next = detail::advance_along(*bd, v.self, v.res);
  auto bd_other = detail::sole_boundary_line(v.rows, v.cols, *v.other);
  if (!bd_other) return Move::stay();
  int dist_other = std::abs(bd_other->along(*v.other) - bd_other->along(v.res));
  if (dist_other != 0) {
    if (is_corner_vertex(v.rows, v.cols, next)) return Move::stay();
    // Livelock guard: hold at dist 1 while the other robot's own advance is
    // blocked by a corner (its next vertex toward the projection is one).
    Vertex other_next = detail::advance_along(*bd_other, *v.other, v.res);
    bool other_blocked = is_corner_vertex(v.rows, v.cols, other_next);
    if (!other_blocked) return Move::step(next);
    if (dist_self != 1) return Move::step(next);
    return Move::stay();
  }
  if (dist_self > 1) return Move::step(next);  // next cannot be a corner here
  return Move::stay();
}

inline Move decide_gather(const RobotView& v) {
  if (v.other_on_res) return approach_path_step(v);
  if (v.self.x == v.res.x || v.self.y == v.res.y) {
    // On a line with res: advance along it, entering res's vertex only in
    // the cornered endgame with the other robot also adjacent.
    bool same_row = v.self.y == v.res.y;
    int dir = same_row ? (v.res.x > v.self.x ? 1 : -1) : (v.res.y > v.self.y ? 1 : -1);
    Vertex next = same_row ? Vertex{v.self.x + dir, v.self.y}
                           : Vertex{v.self.x, v.self.y + dir};
    if (!adjacent(v.self, v.res)) return Move::step(next);
    if (is_corner_vertex(v.rows, v.cols, v.res) && v.other && adjacent(*v.other, v.res))
      return Move::step(next);
    return Move::stay();
  }
  // Off both of res's lines: one step parallel to the other robot's line
  // toward res, which lands on L'.
  if (!v.other) return Move::stay();
  bool l_is_row = v.other->y == v.res.y;
  bool l_is_col = v.other->x == v.res.x;
  if (!l_is_row && !l_is_col) return Move::stay();  // not gather-shaped
  int dir = l_is_row ? (v.res.x > v.self.x ? 1 : -1) : (v.res.y > v.self.y ? 1 : -1);
  Vertex next = l_is_row ? Vertex{v.self.x + dir, v.self.y}
                         : Vertex{v.self.x, v.self.y + dir};
  return Move::step(next);
}

inline Move decide(const RobotView& v) {
  if (view_entry_guard(v)) return decide_entry(v);
  if (view_init_gather(v)) return decide_gather(v);
  return decide_boundary(v);
}

}  // namespace dynrv
