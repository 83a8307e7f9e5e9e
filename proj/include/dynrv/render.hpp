#pragma once

// Per-round depictions of a trace record: a text grid for terminals and a
// static SVG. Rows print with y increasing downward, so the default door
// corner (0,0) appears top-left. Glyphs: D door, 1/2 robots, # resource,
// * robot on the resource. --frames overlays L, L' and R_Con when the record
// is an InitGather configuration.

#include <sstream>
#include <string>
#include <vector>

#include "dynrv/engine.hpp"

namespace dynrv {

struct RenderOptions {
  bool frames = false;
};

inline std::string render_ascii(const TraceRecord& rec, const RenderOptions& opt = {}) {
  const Configuration& c = rec.cfg;
  const GridSpec& g = c.grid;
  std::vector<std::string> grid(g.rows, std::string(g.cols, '.'));
  auto at = [&](Vertex v) -> char& { return grid[v.y][v.x]; };

  if (opt.frames) {
    if (auto f = detect_init_gather(c)) {
      for (int y = 0; y < g.rows; ++y)
        for (int x = 0; x < g.cols; ++x) {
          Vertex v{x, y};
          if (f->r_con.contains(v)) at(v) = ',';
        }
      for (int y = 0; y < g.rows; ++y)
        for (int x = 0; x < g.cols; ++x) {
          Vertex v{x, y};
          if (f->l.contains(v)) at(v) = '-';
          if (f->l_perp.contains(v)) at(v) = f->l.contains(v) ? '+' : '|';
        }
    }
  }
  at(g.door) = 'D';
  at(c.res.pos) = '#';
  for (int who = 1; who <= 2; ++who) {
    const RobotState& r = who == 1 ? c.r1 : c.r2;
    if (!r.on_grid()) continue;
    at(r.pos) = r.pos == c.res.pos ? '*' : static_cast<char>('0' + who);
  }

  std::ostringstream os;
  os << "round " << rec.round << "  phase " << phase_name(rec.phase) << "  res "
     << to_string(c.res.pos) << (c.res.fixed ? " fixed" : "") << "\n";
  for (const auto& row : grid) os << "  " << row << "\n";
  for (const auto& e : rec.events) {
    os << "  event: " << event_kind_name(e.kind);
    if (e.subject != 0) os << " r" << e.subject;
    if (!e.detail.empty()) os << " (" << e.detail << ")";
    os << "\n";
  }
  return os.str();
}

inline std::string render_svg(const TraceRecord& rec, const RenderOptions& opt = {}) {
  const Configuration& c = rec.cfg;
  const GridSpec& g = c.grid;
  const int cell = 40, margin = 30;
  int w = margin * 2 + (g.cols - 1) * cell;
  int h = margin * 2 + (g.rows - 1) * cell;
  auto px = [&](int x) { return margin + x * cell; };
  auto py = [&](int y) { return margin + y * cell; };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
     << "\" viewBox=\"0 0 " << w << ' ' << h << "\">\n";
  os << "<rect width=\"" << w << "\" height=\"" << h << "\" fill=\"white\"/>\n";
  for (int y = 0; y < g.rows; ++y)
    os << "<line x1=\"" << px(0) << "\" y1=\"" << py(y) << "\" x2=\"" << px(g.cols - 1)
       << "\" y2=\"" << py(y) << "\" stroke=\"#ccc\"/>\n";
  for (int x = 0; x < g.cols; ++x)
    os << "<line x1=\"" << px(x) << "\" y1=\"" << py(0) << "\" x2=\"" << px(x) << "\" y2=\""
       << py(g.rows - 1) << "\" stroke=\"#ccc\"/>\n";

  if (opt.frames) {
    if (auto f = detect_init_gather(c)) {
      os << "<rect x=\"" << px(f->r_con.x_lo) << "\" y=\"" << py(f->r_con.y_lo) << "\" width=\""
         << (f->r_con.x_hi - f->r_con.x_lo) * cell << "\" height=\""
         << (f->r_con.y_hi - f->r_con.y_lo) * cell
         << "\" fill=\"#fce28c\" fill-opacity=\"0.4\" stroke=\"#c90\"/>\n";
      auto draw_line = [&](Line l, const char* color) {
        if (l.axis == Axis::Row)
          os << "<line x1=\"" << px(0) << "\" y1=\"" << py(l.index) << "\" x2=\""
             << px(g.cols - 1) << "\" y2=\"" << py(l.index) << "\" stroke=\"" << color
             << "\" stroke-dasharray=\"6 3\"/>\n";
        else
          os << "<line x1=\"" << px(l.index) << "\" y1=\"" << py(0) << "\" x2=\""
             << px(l.index) << "\" y2=\"" << py(g.rows - 1) << "\" stroke=\"" << color
             << "\" stroke-dasharray=\"6 3\"/>\n";
      };
      draw_line(f->l, "#07c");
      draw_line(f->l_perp, "#0a5");
    }
  }

  // Door: a diamond on its corner.
  os << "<rect x=\"" << px(g.door.x) - 9 << "\" y=\"" << py(g.door.y) - 9
     << "\" width=\"18\" height=\"18\" fill=\"none\" stroke=\"#333\" stroke-width=\"2\""
     << " transform=\"rotate(45 " << px(g.door.x) << ' ' << py(g.door.y) << ")\"/>\n";
  // Resource: a filled square.
  os << "<rect x=\"" << px(c.res.pos.x) - 7 << "\" y=\"" << py(c.res.pos.y) - 7
     << "\" width=\"14\" height=\"14\" fill=\"" << (c.res.fixed ? "#a33" : "#d80") << "\"/>\n";
  // Robots: circles.
  for (int who = 1; who <= 2; ++who) {
    const RobotState& r = who == 1 ? c.r1 : c.r2;
    if (!r.on_grid()) continue;
    os << "<circle cx=\"" << px(r.pos.x) << "\" cy=\"" << py(r.pos.y)
       << "\" r=\"10\" fill=\"none\" stroke=\"" << (who == 1 ? "#06c" : "#609")
       << "\" stroke-width=\"3\"/>\n";
    os << "<text x=\"" << px(r.pos.x) << "\" y=\"" << py(r.pos.y) + 4
       << "\" font-size=\"11\" text-anchor=\"middle\">" << who << "</text>\n";
  }
  os << "<text x=\"" << margin << "\" y=\"" << h - 8 << "\" font-size=\"12\">round "
     << rec.round << " / " << phase_name(rec.phase) << "</text>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace dynrv
