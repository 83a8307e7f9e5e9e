#pragma once

// Global round state and the derived structures the protocol and the
// verifier both consume: per-robot observable views, InitGather detection,
// phase dispatch, boundary and gather frames.

#include <optional>
#include <utility>

#include "dynrv/geometry.hpp"
#include "dynrv/symmetry.hpp"

namespace dynrv {

enum class RobotStatus { Outside, Active, Terminated };

struct RobotState {
  RobotStatus status = RobotStatus::Outside;
  Vertex pos;  // meaningful unless Outside

  bool active() const { return status == RobotStatus::Active; }
  bool terminated() const { return status == RobotStatus::Terminated; }
  bool on_grid() const { return status != RobotStatus::Outside; }
};

struct ResourceState {
  Vertex pos;
  int stay_count = 0;  // consecutive completed rounds alone on this vertex
  bool fixed = false;
};

enum class RobotSel { First, Second };

inline RobotSel other_robot(RobotSel r) {
  return r == RobotSel::First ? RobotSel::Second : RobotSel::First;
}

struct Configuration {
  GridSpec grid;
  int round = 0;
  RobotState r1, r2;
  ResourceState res;
  int t_f = 1;

  const RobotState& robot(RobotSel sel) const {
    return sel == RobotSel::First ? r1 : r2;
  }
  RobotState& robot(RobotSel sel) { return sel == RobotSel::First ? r1 : r2; }

  bool done() const { return r1.terminated() && r2.terminated(); }
};

// What a single robot observes in its LOOK phase. Positions are grid
// coordinates for convenience; the policy is obliged (and tested) to treat
// them equivariantly under the grid's symmetries, and the door location is
// observable only through at_door.
struct RobotView {
  int rows = 0, cols = 0;
  Vertex self;
  bool at_door = false;
  std::optional<Vertex> other;  // absent iff the other robot is Outside
  bool other_on_res = false;
  Vertex res;

  friend bool operator==(const RobotView&, const RobotView&) = default;
};

inline RobotView robot_view(const Configuration& cfg, RobotSel sel) {
  const RobotState& self = cfg.robot(sel);
  if (!self.active())
    throw Error(Errc::NotActive, "cannot take a view for a non-active robot");
  const RobotState& other = cfg.robot(other_robot(sel));
  RobotView v;
  v.rows = cfg.grid.rows;
  v.cols = cfg.grid.cols;
  v.self = self.pos;
  v.at_door = self.pos == cfg.grid.door;
  if (other.on_grid()) v.other = other.pos;
  v.other_on_res = other.on_grid() && other.pos == cfg.res.pos;
  v.res = cfg.res.pos;
  return v;
}

inline RobotView transform_view(const GridSymmetry& s, const RobotView& v) {
  RobotView out = v;
  if (s.swap_axes) std::swap(out.rows, out.cols);
  out.self = apply_symmetry(s, v.rows, v.cols, v.self);
  if (v.other) out.other = apply_symmetry(s, v.rows, v.cols, *v.other);
  out.res = apply_symmetry(s, v.rows, v.cols, v.res);
  return out;
}

// --- InitGather (Definition 4) ---------------------------------------------

// Does `anchor` lie on a grid line with `res`, with `other` at perpendicular
// distance <= 1 from the line through res perpendicular to it?
inline bool init_gather_anchored(Vertex anchor, Vertex other, Vertex res) {
  if (anchor.y == res.y && anchor.x != res.x)
    return std::abs(other.x - res.x) <= 1;
  if (anchor.x == res.x && anchor.y != res.y)
    return std::abs(other.y - res.y) <= 1;
  return false;
}

// The three clauses of the InitGather definition on bare positions.
inline bool positions_init_gather(Vertex a, Vertex b, Vertex res) {
  if (a.x == b.x || a.y == b.y) return false;
  return init_gather_anchored(a, b, res) || init_gather_anchored(b, a, res);
}

struct GatherFrame {
  RobotSel anchor;   // the robot collinear with res (canonical pick on ties)
  Line l;            // through anchor and res
  Line l_perp;       // L': through res, perpendicular to l
  Line l1;           // through anchor, perpendicular to l
  Line l2;           // through the other robot, parallel to l
  Rect r_con;        // containing rectangle
};

inline std::optional<GatherFrame> detect_init_gather(const Configuration& cfg) {
  if (!cfg.r1.active() || !cfg.r2.active()) return std::nullopt;
  Vertex a = cfg.r1.pos, b = cfg.r2.pos, res = cfg.res.pos;
  if (a.x == b.x || a.y == b.y) return std::nullopt;

  bool a_ok = init_gather_anchored(a, b, res);
  bool b_ok = init_gather_anchored(b, a, res);
  if (!a_ok && !b_ok) return std::nullopt;

  RobotSel anchor_sel;
  if (a_ok && b_ok) {
    // Both robots are collinear with res (one by row, one by column); the
    // canonical frame anchors on the row. Affects reporting only.
    anchor_sel = a.y == res.y ? RobotSel::First : RobotSel::Second;
  } else {
    anchor_sel = a_ok ? RobotSel::First : RobotSel::Second;
  }

  Vertex p = cfg.robot(anchor_sel).pos;
  Vertex q = cfg.robot(other_robot(anchor_sel)).pos;
  GatherFrame f;
  f.anchor = anchor_sel;
  f.l = p.y == res.y ? row_line(p.y) : col_line(p.x);
  f.l_perp = perpendicular_through(f.l, res);
  f.l1 = perpendicular_through(f.l, p);
  f.l2 = parallel_through(f.l, q);

  // R_Con: bounded by l1, l2 and the far grid boundaries on res's side.
  const GridSpec& g = cfg.grid;
  int x_lo = 0, x_hi = g.cols - 1, y_lo = 0, y_hi = g.rows - 1;
  auto clamp_side = [](int cut, int coord, int lo, int hi, int* out_lo, int* out_hi) {
    if (coord > cut) { *out_lo = cut; *out_hi = hi; }
    else { *out_lo = lo; *out_hi = cut; }
  };
  if (f.l1.axis == Axis::Col) clamp_side(f.l1.index, res.x, 0, g.cols - 1, &x_lo, &x_hi);
  else clamp_side(f.l1.index, res.y, 0, g.rows - 1, &y_lo, &y_hi);
  if (f.l2.axis == Axis::Col) clamp_side(f.l2.index, res.x, 0, g.cols - 1, &x_lo, &x_hi);
  else clamp_side(f.l2.index, res.y, 0, g.rows - 1, &y_lo, &y_hi);
  f.r_con = Rect{x_lo, x_hi, y_lo, y_hi};
  return f;
}

// --- Phase dispatch (the top-level guard on the full configuration) --------

enum class Phase { Entry, Gather, Boundary, Done };

inline const char* phase_name(Phase p) {
  switch (p) {
    case Phase::Entry: return "entry";
    case Phase::Gather: return "gather";
    case Phase::Boundary: return "boundary";
    case Phase::Done: return "done";
  }
  return "?";
}

inline Phase classify_phase(const Configuration& cfg) {
  if (cfg.done()) return Phase::Done;
  bool any_terminated = cfg.r1.terminated() || cfg.r2.terminated();
  if (!any_terminated) {
    for (RobotSel sel : {RobotSel::First, RobotSel::Second}) {
      const RobotState& r = cfg.robot(sel);
      if (!r.active() || !cfg.grid.is_corner(r.pos)) continue;
      const RobotState& o = cfg.robot(other_robot(sel));
      if (!o.on_grid() || (o.active() && adjacent(o.pos, r.pos))) return Phase::Entry;
    }
  }
  if (detect_init_gather(cfg)) return Phase::Gather;
  return Phase::Boundary;
}

// --- Boundary frame (Definitions 1-3) ---------------------------------------

struct BoundaryFrame {
  Line bd;                      // the boundary line containing the robot
  Line pd;                      // perpendicular through the robot
  int dist = 0;                 // dist(r)
  std::optional<Vertex> toward; // neighbor on bd toward res's projection
};

inline BoundaryFrame boundary_frame(const Configuration& cfg, RobotSel sel) {
  const RobotState& r = cfg.robot(sel);
  if (!r.active()) throw Error(Errc::NotActive, "boundary frame of a non-active robot");
  auto lines = cfg.grid.boundary_lines_through(r.pos);
  if (lines.empty())
    throw Error(Errc::NotOnBoundary, "robot " + to_string(r.pos) + " is not on a boundary");
  if (lines.size() > 1)
    throw Error(Errc::AtCorner, "robot " + to_string(r.pos) + " is at a corner; bd ambiguous");
  BoundaryFrame f;
  f.bd = lines.front();
  f.pd = perpendicular_through(f.bd, r.pos);
  f.dist = project_dist_along_boundary(cfg.grid, f.bd, r.pos, cfg.res.pos);
  if (f.dist != 0) {
    int dir = f.bd.along(cfg.res.pos) > f.bd.along(r.pos) ? 1 : -1;
    f.toward = f.bd.axis == Axis::Row ? Vertex{r.pos.x + dir, r.pos.y}
                                      : Vertex{r.pos.x, r.pos.y + dir};
  }
  return f;
}

}  // namespace dynrv
