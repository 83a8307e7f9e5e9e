#pragma once

// Symmetry group of the m x n rectangle acting on grid vertices: the four
// axis-preserving maps (identity, flips, 180 rotation), plus the four
// axis-swapping maps when the grid is square.

#include <vector>

#include "dynrv/geometry.hpp"

namespace dynrv {

struct GridSymmetry {
  bool swap_axes = false;  // transpose first (square grids only)
  bool flip_x = false;
  bool flip_y = false;

  bool identity() const { return !swap_axes && !flip_x && !flip_y; }
};

inline Vertex apply_symmetry(const GridSymmetry& s, int rows, int cols, Vertex v) {
  int x = v.x, y = v.y;
  if (s.swap_axes) {
    std::swap(x, y);
    std::swap(rows, cols);
  }
  if (s.flip_x) x = cols - 1 - x;
  if (s.flip_y) y = rows - 1 - y;
  return {x, y};
}

inline std::vector<GridSymmetry> grid_symmetries(int rows, int cols) {
  std::vector<GridSymmetry> out;
  for (int sw = 0; sw <= (rows == cols ? 1 : 0); ++sw)
    for (int fx = 0; fx <= 1; ++fx)
      for (int fy = 0; fy <= 1; ++fy)
        out.push_back({sw != 0, fx != 0, fy != 0});
  return out;
}

}  // namespace dynrv
