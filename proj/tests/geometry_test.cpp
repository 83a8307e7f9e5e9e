#include <algorithm>
#include <functional>

#include <catch2/catch_amalgamated.hpp>

#include "dynrv/geometry.hpp"
#include "dynrv/symmetry.hpp"

using namespace dynrv;

namespace {

bool throws_code(Errc want, const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code() == want;
  }
  return false;
}

}  // namespace

TEST_CASE("build_grid validates dimensions and door") {
  GridSpec g = build_grid(4, 5, {0, 0});
  CHECK(g.rows == 4);
  CHECK(g.cols == 5);
  CHECK(g.door == Vertex{0, 0});
  int count = 0;
  for (int y = 0; y < g.rows; ++y)
    for (int x = 0; x < g.cols; ++x) count += g.contains({x, y});
  CHECK(count == 20);

  GridSpec g2 = build_grid(3, 3, {2, 2});
  CHECK(g2.door == Vertex{2, 2});

  CHECK(throws_code(Errc::DimensionTooSmall, [] { build_grid(2, 5, {0, 0}); }));
  CHECK(throws_code(Errc::DimensionTooSmall, [] { build_grid(5, 2, {0, 0}); }));
  CHECK(throws_code(Errc::InvalidDoor, [] { build_grid(4, 5, {1, 0}); }));
  CHECK(throws_code(Errc::InvalidDoor, [] { build_grid(4, 5, {5, 3}); }));
}

TEST_CASE("classify_vertex matches degree") {
  GridSpec g = build_grid(4, 5, {0, 0});
  CHECK(classify_vertex(g, {0, 0}) == VertexClass::Corner);
  CHECK(classify_vertex(g, {0, 2}) == VertexClass::Boundary);
  CHECK(classify_vertex(g, {2, 2}) == VertexClass::Interior);
  CHECK(throws_code(Errc::OutOfGrid, [&] { classify_vertex(g, {7, 0}); }));
}

TEST_CASE("classify agrees with neighbor count on every small grid") {
  for (int m = 3; m <= 8; ++m)
    for (int n = 3; n <= 8; ++n) {
      GridSpec g = build_grid(m, n, {0, 0});
      for (int y = 0; y < m; ++y)
        for (int x = 0; x < n; ++x) {
          Vertex v{x, y};
          auto nb = g.neighbors(v);
          VertexClass c = classify_vertex(g, v);
          switch (nb.size()) {
            case 2: CHECK(c == VertexClass::Corner); break;
            case 3: CHECK(c == VertexClass::Boundary); break;
            case 4: CHECK(c == VertexClass::Interior); break;
            default: FAIL("impossible degree");
          }
          for (Vertex u : nb) CHECK(hop_distance(u, v) == 1);
        }
    }
}

TEST_CASE("neighbors") {
  GridSpec g = build_grid(4, 5, {0, 0});
  auto has = [](const std::vector<Vertex>& vs, Vertex v) {
    return std::find(vs.begin(), vs.end(), v) != vs.end();
  };
  auto n1 = g.neighbors({0, 0});
  CHECK(n1.size() == 2);
  CHECK(has(n1, {1, 0}));
  CHECK(has(n1, {0, 1}));
  auto n2 = g.neighbors({2, 0});
  CHECK(n2.size() == 3);
  CHECK(has(n2, {1, 0}));
  CHECK(has(n2, {3, 0}));
  CHECK(has(n2, {2, 1}));
  auto n3 = g.neighbors({2, 2});
  CHECK(n3.size() == 4);
}

TEST_CASE("project_dist_along_boundary") {
  GridSpec g5 = build_grid(5, 5, {0, 0});
  CHECK(project_dist_along_boundary(g5, col_line(0), {0, 2}, {3, 4}) == 2);
  CHECK(project_dist_along_boundary(g5, row_line(0), {2, 0}, {2, 3}) == 0);
  GridSpec g45 = build_grid(4, 5, {0, 0});
  CHECK(project_dist_along_boundary(g45, col_line(0), {0, 1}, {4, 1}) == 0);

  CHECK(throws_code(Errc::NotOnBoundary,
                    [&] { project_dist_along_boundary(g5, col_line(0), {1, 2}, {3, 4}); }));
  CHECK(throws_code(Errc::NotOnBoundary,
                    [&] { project_dist_along_boundary(g5, col_line(2), {2, 2}, {3, 4}); }));
}

TEST_CASE("project_dist is invariant under grid reflections") {
  GridSpec g = build_grid(5, 6, {0, 0});
  auto reflect_line = [&](const GridSymmetry& s, Line l) {
    // A boundary line maps to the line through the images of two points on it.
    Vertex a = l.axis == Axis::Row ? Vertex{0, l.index} : Vertex{l.index, 0};
    Vertex b = l.axis == Axis::Row ? Vertex{1, l.index} : Vertex{l.index, 1};
    Vertex ta = apply_symmetry(s, g.rows, g.cols, a);
    Vertex tb = apply_symmetry(s, g.rows, g.cols, b);
    return ta.y == tb.y ? row_line(ta.y) : col_line(ta.x);
  };
  for (const auto& s : grid_symmetries(g.rows, g.cols)) {
    for (Line bd : g.boundary_lines()) {
      for (int i = 0; i < (bd.axis == Axis::Row ? g.cols : g.rows); ++i) {
        Vertex robot = bd.axis == Axis::Row ? Vertex{i, bd.index} : Vertex{bd.index, i};
        for (int ry = 0; ry < g.rows; ++ry)
          for (int rx = 0; rx < g.cols; ++rx) {
            Vertex res{rx, ry};
            int d = project_dist_along_boundary(g, bd, robot, res);
            int dt = project_dist_along_boundary(g, reflect_line(s, bd),
                                                 apply_symmetry(s, g.rows, g.cols, robot),
                                                 apply_symmetry(s, g.rows, g.cols, res));
            REQUIRE(d == dt);
          }
      }
    }
  }
}

TEST_CASE("quadrant_partition labels and degeneracy") {
  GridSpec g = build_grid(5, 5, {0, 0});
  auto q = quadrant_partition(g, row_line(1), col_line(1));
  CHECK(q.se == Rect{1, 4, 1, 4});
  CHECK(q.nw == Rect{0, 1, 0, 1});
  CHECK(q.ne == Rect{1, 4, 0, 1});
  CHECK(q.sw == Rect{0, 1, 1, 4});

  auto q2 = quadrant_partition(g, row_line(4), col_line(4));
  CHECK(q2.se == Rect{4, 4, 4, 4});

  CHECK(throws_code(Errc::ParallelLines,
                    [&] { quadrant_partition(g, row_line(1), row_line(2)); }));
}

TEST_CASE("quadrant labels follow the door corner") {
  // With the door at the north-east corner, NW is the door-side quadrant.
  GridSpec g = build_grid(5, 5, {4, 0});
  auto q = quadrant_partition(g, row_line(1), col_line(3));
  CHECK(q.nw == Rect{3, 4, 0, 1});
  CHECK(q.se == Rect{0, 3, 1, 4});
}

TEST_CASE("quadrants cover the grid and overlap only on the cut lines") {
  for (int m = 3; m <= 5; ++m)
    for (int n = 3; n <= 5; ++n) {
      GridSpec g = build_grid(m, n, {0, 0});
      for (int cy = 0; cy < m; ++cy)
        for (int cx = 0; cx < n; ++cx) {
          auto q = quadrant_partition(g, row_line(cy), col_line(cx));
          for (int y = 0; y < m; ++y)
            for (int x = 0; x < n; ++x) {
              Vertex v{x, y};
              int hits = q.ne.contains(v) + q.nw.contains(v) + q.se.contains(v) +
                         q.sw.contains(v);
              REQUIRE(hits >= 1);
              if (hits > 1) REQUIRE((v.y == cy || v.x == cx));
            }
        }
    }
}

TEST_CASE("far corner is diagonally opposite the door") {
  CHECK(build_grid(4, 4, {0, 0}).far_corner() == Vertex{3, 3});
  CHECK(build_grid(4, 5, {4, 0}).far_corner() == Vertex{0, 3});
  CHECK(build_grid(4, 5, {0, 3}).far_corner() == Vertex{4, 0});
  CHECK(build_grid(4, 5, {4, 3}).far_corner() == Vertex{0, 0});
}
