#pragma once

// Finite m x n grid graph, its boundary structure and the geometric frames
// (perpendicular lines, projections, quadrants) the protocol reasons about.
//
// Coordinates: x is the column index in [0, cols), y is the row index in
// [0, rows). A Line is a full grid row (fixed y) or column (fixed x).

#include <array>
#include <compare>
#include <cmath>
#include <cstdlib>
#include <string>
#include <vector>

#include "dynrv/error.hpp"

namespace dynrv {

struct Vertex {
  int x = 0;
  int y = 0;
  friend auto operator<=>(const Vertex&, const Vertex&) = default;
};

inline int hop_distance(Vertex a, Vertex b) {
  return std::abs(a.x - b.x) + std::abs(a.y - b.y);
}

inline bool adjacent(Vertex a, Vertex b) { return hop_distance(a, b) == 1; }

inline std::string to_string(Vertex v) {
  return "(" + std::to_string(v.x) + "," + std::to_string(v.y) + ")";
}

enum class Axis { Row, Col };

// A full grid line: all vertices with y == index (Row) or x == index (Col).
struct Line {
  Axis axis = Axis::Row;
  int index = 0;
  friend auto operator<=>(const Line&, const Line&) = default;

  bool contains(Vertex v) const {
    return axis == Axis::Row ? v.y == index : v.x == index;
  }
  // Coordinate of v along the line's direction.
  int along(Vertex v) const { return axis == Axis::Row ? v.x : v.y; }
};

inline Line row_line(int y) { return {Axis::Row, y}; }
inline Line col_line(int x) { return {Axis::Col, x}; }

inline Line perpendicular_through(Line l, Vertex v) {
  return l.axis == Axis::Row ? col_line(v.x) : row_line(v.y);
}

inline Line parallel_through(Line l, Vertex v) {
  return l.axis == Axis::Row ? row_line(v.y) : col_line(v.x);
}

// Distance of v to the line, measured perpendicular to it (in hops).
inline int perp_distance(Line l, Vertex v) {
  return l.axis == Axis::Row ? std::abs(v.y - l.index) : std::abs(v.x - l.index);
}

enum class VertexClass { Corner, Boundary, Interior };

// Door-agnostic position queries on a rows x cols grid. The robot policy
// works from these (a view carries dimensions but no door location).
inline bool in_grid(int rows, int cols, Vertex v) {
  return v.x >= 0 && v.x < cols && v.y >= 0 && v.y < rows;
}

inline bool is_corner_vertex(int rows, int cols, Vertex v) {
  return (v.x == 0 || v.x == cols - 1) && (v.y == 0 || v.y == rows - 1);
}

inline std::vector<Vertex> grid_neighbors(int rows, int cols, Vertex v) {
  std::vector<Vertex> out;
  out.reserve(4);
  if (v.x + 1 < cols) out.push_back({v.x + 1, v.y});
  if (v.x - 1 >= 0) out.push_back({v.x - 1, v.y});
  if (v.y + 1 < rows) out.push_back({v.x, v.y + 1});
  if (v.y - 1 >= 0) out.push_back({v.x, v.y - 1});
  return out;
}

// Inclusive axis-aligned rectangle of vertices.
struct Rect {
  int x_lo = 0, x_hi = 0, y_lo = 0, y_hi = 0;
  friend auto operator<=>(const Rect&, const Rect&) = default;

  bool contains(Vertex v) const {
    return v.x >= x_lo && v.x <= x_hi && v.y >= y_lo && v.y <= y_hi;
  }
  int width() const { return x_hi - x_lo + 1; }   // columns spanned
  int height() const { return y_hi - y_lo + 1; }  // rows spanned
};

struct GridSpec {
  int rows = 0;  // m
  int cols = 0;  // n
  Vertex door;

  bool contains(Vertex v) const {
    return v.x >= 0 && v.x < cols && v.y >= 0 && v.y < rows;
  }

  void require_contains(Vertex v) const {
    if (!contains(v))
      throw Error(Errc::OutOfGrid, "vertex " + to_string(v) + " outside " +
                                       std::to_string(rows) + "x" + std::to_string(cols) + " grid");
  }

  int degree(Vertex v) const {
    int d = 0;
    if (v.x > 0) ++d;
    if (v.x < cols - 1) ++d;
    if (v.y > 0) ++d;
    if (v.y < rows - 1) ++d;
    return d;
  }

  bool is_corner(Vertex v) const {
    return (v.x == 0 || v.x == cols - 1) && (v.y == 0 || v.y == rows - 1);
  }

  bool is_boundary_vertex(Vertex v) const {
    return v.x == 0 || v.x == cols - 1 || v.y == 0 || v.y == rows - 1;
  }

  std::array<Vertex, 4> corners() const {
    return {Vertex{0, 0}, Vertex{cols - 1, 0}, Vertex{0, rows - 1},
            Vertex{cols - 1, rows - 1}};
  }

  // The corner diagonally opposite the door.
  Vertex far_corner() const {
    return {door.x == 0 ? cols - 1 : 0, door.y == 0 ? rows - 1 : 0};
  }

  std::array<Line, 4> boundary_lines() const {
    return {row_line(0), row_line(rows - 1), col_line(0), col_line(cols - 1)};
  }

  bool is_boundary_line(Line l) const {
    if (l.axis == Axis::Row) return l.index == 0 || l.index == rows - 1;
    return l.index == 0 || l.index == cols - 1;
  }

  // Boundary lines through v: 0 (interior), 1 (plain boundary), 2 (corner).
  std::vector<Line> boundary_lines_through(Vertex v) const {
    std::vector<Line> out;
    if (v.y == 0) out.push_back(row_line(0));
    if (v.y == rows - 1) out.push_back(row_line(rows - 1));
    if (v.x == 0) out.push_back(col_line(0));
    if (v.x == cols - 1) out.push_back(col_line(cols - 1));
    return out;
  }

  std::vector<Vertex> neighbors(Vertex v) const {
    require_contains(v);
    std::vector<Vertex> out;
    out.reserve(4);
    if (v.x + 1 < cols) out.push_back({v.x + 1, v.y});
    if (v.x - 1 >= 0) out.push_back({v.x - 1, v.y});
    if (v.y + 1 < rows) out.push_back({v.x, v.y + 1});
    if (v.y - 1 >= 0) out.push_back({v.x, v.y - 1});
    return out;
  }
};

inline GridSpec build_grid(int m, int n, Vertex door) {
  if (m < 3 || n < 3)
    throw Error(Errc::DimensionTooSmall,
                "grid must be at least 3x3, got " + std::to_string(m) + "x" + std::to_string(n));
  GridSpec g{m, n, door};
  if (!g.contains(door) || !g.is_corner(door))
    throw Error(Errc::InvalidDoor, "door " + to_string(door) + " is not a corner");
  return g;
}

inline VertexClass classify_vertex(const GridSpec& g, Vertex v) {
  g.require_contains(v);
  switch (g.degree(v)) {
    case 2: return VertexClass::Corner;
    case 3: return VertexClass::Boundary;
    default: return VertexClass::Interior;
  }
}

// dist(r): hop distance along `boundary` between `robot` and the
// perpendicular projection of `res` onto that boundary.
inline int project_dist_along_boundary(const GridSpec& g, Line boundary, Vertex robot,
                                       Vertex res) {
  if (!g.is_boundary_line(boundary))
    throw Error(Errc::NotOnBoundary, "line is not a grid boundary");
  g.require_contains(robot);
  g.require_contains(res);
  if (!boundary.contains(robot))
    throw Error(Errc::NotOnBoundary, "robot " + to_string(robot) + " not on the boundary line");
  return std::abs(boundary.along(robot) - boundary.along(res));
}

// Four quadrants cut by the robots' perpendicular lines, labeled with the
// door normalized to the north-west corner (presentation only).
struct QuadrantPartition {
  Line pd_r;
  Line pd_r2;
  Rect ne, nw, se, sw;
};

inline QuadrantPartition quadrant_partition(const GridSpec& g, Line pd_r, Line pd_r2) {
  if (pd_r.axis == pd_r2.axis)
    throw Error(Errc::ParallelLines, "quadrants need one row and one column line");
  Line h = pd_r.axis == Axis::Row ? pd_r : pd_r2;   // horizontal cut (a row)
  Line v = pd_r.axis == Axis::Col ? pd_r : pd_r2;   // vertical cut (a column)
  int cy = h.index, cx = v.index;
  // In door-normalized orientation the door corner is NW. West/north are the
  // door sides of the cuts; flip per actual door corner.
  bool door_west = g.door.x == 0;
  bool door_north = g.door.y == 0;
  Rect west{0, cx, 0, g.rows - 1}, east{cx, g.cols - 1, 0, g.rows - 1};
  if (!door_west) std::swap(west, east);
  Rect north{0, g.cols - 1, 0, cy}, south{0, g.cols - 1, cy, g.rows - 1};
  if (!door_north) std::swap(north, south);
  auto meet = [](const Rect& a, const Rect& b) {
    return Rect{std::max(a.x_lo, b.x_lo), std::min(a.x_hi, b.x_hi),
                std::max(a.y_lo, b.y_lo), std::min(a.y_hi, b.y_hi)};
  };
  return {pd_r, pd_r2, meet(north, east), meet(north, west), meet(south, east),
          meet(south, west)};
}

}  // namespace dynrv
