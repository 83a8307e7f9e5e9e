#pragma once

// Trace-level invariant monitors, the exhaustive worst-case oracle and the
// policy equivariance suite.
//
// The oracle treats a run as a game tree: robots are deterministic, so the
// only branching is over the resource's legal moves (plus, optionally, the
// entry free choice). Depth-first search with memoization over
// (robot statuses+positions, resource position, stay count) computes the
// exact worst capture time; a back edge would mean the adversary can evade
// forever and is reported as a non-terminating witness instead of a number.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "dynrv/engine.hpp"

namespace dynrv {

// --- Invariant monitors ------------------------------------------------------

struct MonitorResult {
  std::string name;
  bool passed = true;
  int failure_round = -1;
  std::string detail;

  MonitorResult(std::string n = "") : name(std::move(n)) {}
};

struct InvariantReport {
  std::vector<MonitorResult> monitors;

  bool all_passed() const {
    for (const auto& m : monitors)
      if (!m.passed) return false;
    return true;
  }

  const MonitorResult* find(const std::string& name) const {
    for (const auto& m : monitors)
      if (m.name == name) return &m;
    return nullptr;
  }

  std::string summary() const {
    std::ostringstream os;
    for (const auto& m : monitors) {
      os << (m.passed ? "pass" : "FAIL") << "  " << m.name;
      if (!m.passed) os << "  (round " << m.failure_round << ": " << m.detail << ")";
      else if (!m.detail.empty()) os << "  [" << m.detail << "]";
      os << '\n';
    }
    return os.str();
  }
};

namespace detail {

inline int sign_of(int v) { return v > 0 ? 1 : v < 0 ? -1 : 0; }

struct MonitorCtx {
  const Trace& t;
  std::vector<MonitorResult>* out;

  void fail(MonitorResult& m, int round, const std::string& why) {
    if (!m.passed) return;  // keep the first failure
    m.passed = false;
    m.failure_round = round;
    m.detail = why;
  }
};

}  // namespace detail

// Evaluates the seven invariant monitors over a trace. Scope conventions: the
// boundary monitors apply to records labeled Boundary with both robots
// active (rounds where one robot is already terminated are approach rounds,
// outside those monitors' premises); the gather monitors apply to records
// labeled Gather with both robots active. All seven are statements about
// the fully synchronous protocol, in which every robot responds every
// round; a semi-synchronous trace passes them vacuously.
inline InvariantReport check_invariants(const Trace& t) {
  if (t.records.empty()) throw Error(Errc::MalformedTrace, "trace has no records");
  for (std::size_t i = 0; i < t.records.size(); ++i) {
    if (t.records[i].round != static_cast<int>(i) || t.records[i].cfg.round != t.records[i].round)
      throw Error(Errc::MalformedTrace, "trace rounds are not gap-free from 0");
  }
  if (t.scheduler != "fsync") {
    InvariantReport vacuous;
    vacuous.monitors = {
        {"boundary_discipline"}, {"pd_dist_persistence"}, {"pd_other_never_crossed"},
        {"init_gather_preserved"}, {"rcon_exclusion"}, {"rcon_monotone"}, {"endgame_2x2"},
    };
    for (auto& m : vacuous.monitors) m.detail = "fsync-only monitor; " + t.scheduler + " trace";
    return vacuous;
  }

  const auto& recs = t.records;
  const GridSpec& g = recs.front().cfg.grid;
  int t_f = recs.front().cfg.t_f;
  auto both_active = [&](std::size_t i) {
    return recs[i].cfg.r1.active() && recs[i].cfg.r2.active();
  };
  auto in_boundary = [&](std::size_t i) {
    return recs[i].phase == Phase::Boundary && both_active(i);
  };
  auto in_gather = [&](std::size_t i) {
    return recs[i].phase == Phase::Gather && both_active(i);
  };

  InvariantReport report;
  report.monitors = {
      {"boundary_discipline"}, {"pd_dist_persistence"}, {"pd_other_never_crossed"},
      {"init_gather_preserved"}, {"rcon_exclusion"}, {"rcon_monotone"}, {"endgame_2x2"},
  };
  MonitorResult& m_a = report.monitors[0];
  MonitorResult& m_b = report.monitors[1];
  MonitorResult& m_c = report.monitors[2];
  MonitorResult& m_d = report.monitors[3];
  MonitorResult& m_e = report.monitors[4];
  MonitorResult& m_f = report.monitors[5];
  MonitorResult& m_g = report.monitors[6];
  detail::MonitorCtx ctx{t, &report.monitors};

  // (a) Boundary discipline: each robot on a unique boundary line that
  // contains the door, never at a corner, line constant per robot, and the
  // two robots on distinct lines.
  std::vector<std::optional<Line>> bd1(recs.size()), bd2(recs.size());
  for (std::size_t i = 0; i < recs.size(); ++i) {
    if (!in_boundary(i)) continue;
    for (int who = 1; who <= 2; ++who) {
      const RobotState& r = who == 1 ? recs[i].cfg.r1 : recs[i].cfg.r2;
      auto lines = g.boundary_lines_through(r.pos);
      if (lines.size() != 1) {
        ctx.fail(m_a, recs[i].round,
                 "r" + std::to_string(who) + " at " + to_string(r.pos) +
                     (lines.empty() ? " is off the boundary" : " is at a corner"));
        continue;
      }
      if (!lines.front().contains(g.door)) {
        ctx.fail(m_a, recs[i].round,
                 "r" + std::to_string(who) + "'s boundary does not contain the door");
        continue;
      }
      (who == 1 ? bd1 : bd2)[i] = lines.front();
    }
    if (bd1[i] && bd2[i] && *bd1[i] == *bd2[i])
      ctx.fail(m_a, recs[i].round, "both robots share one boundary line");
    if (i > 0 && in_boundary(i - 1)) {
      if (bd1[i] && bd1[i - 1] && !(*bd1[i] == *bd1[i - 1]))
        ctx.fail(m_a, recs[i].round, "r1 changed boundary line");
      if (bd2[i] && bd2[i - 1] && !(*bd2[i] == *bd2[i - 1]))
        ctx.fail(m_a, recs[i].round, "r2 changed boundary line");
    }
  }

  // (b) Once the resource lands on or crosses PD(R) in the Boundary Phase,
  // dist(R) stays <= 1 for every later Boundary round, except that it may sit
  // at exactly 2 during (and one round after) the rounds in which R's chase
  // is frozen by the protocol's own guards: the other robot's advance is
  // blocked by a corner, or the other robot has dist 0. That is the shape the
  // termination argument itself walks through (the chasing robot resumes one
  // round later), so the monitor admits it and nothing looser.
  // (c) From the first such event, the resource never strictly crosses the
  // other robot's PD.
  auto chase_frozen = [&](std::size_t i, int who) {
    int other = 3 - who;
    const auto& obd = (other == 1 ? bd1 : bd2)[i];
    if (!obd) return false;
    const RobotState& o = other == 1 ? recs[i].cfg.r1 : recs[i].cfg.r2;
    int odist = std::abs(obd->along(recs[i].cfg.res.pos) - obd->along(o.pos));
    if (odist == 0) return true;
    int dir = obd->along(recs[i].cfg.res.pos) > obd->along(o.pos) ? 1 : -1;
    Vertex onext = obd->axis == Axis::Row ? Vertex{o.pos.x + dir, o.pos.y}
                                          : Vertex{o.pos.x, o.pos.y + dir};
    return g.is_corner(onext);
  };
  int flagged_round[3] = {-1, -1, -1};  // 1-indexed by robot
  for (int who = 1; who <= 2; ++who) {
    int flagged = -1;
    std::optional<int> prev_offset;
    bool prev_frozen = false;
    std::size_t prev_i = 0;
    for (std::size_t i = 0; i < recs.size(); ++i) {
      if (!in_boundary(i)) {
        prev_offset.reset();
        prev_frozen = false;
        continue;
      }
      const auto& bd = (who == 1 ? bd1 : bd2)[i];
      if (!bd) { prev_offset.reset(); continue; }
      const RobotState& r = who == 1 ? recs[i].cfg.r1 : recs[i].cfg.r2;
      int offset = bd->along(recs[i].cfg.res.pos) - bd->along(r.pos);
      int dist = std::abs(offset);
      bool frozen = chase_frozen(i, who);
      if (flagged >= 0) {
        int allowed = (frozen || prev_frozen) ? 2 : 1;
        if (dist > allowed)
          ctx.fail(m_b, recs[i].round,
                   "dist(r" + std::to_string(who) + ") = " + std::to_string(dist) +
                       " after the resource reached PD at round " + std::to_string(flagged));
      }
      if (flagged < 0) {
        if (dist == 0) flagged = recs[i].round;
        else if (prev_offset && prev_i + 1 == i &&
                 detail::sign_of(*prev_offset) * detail::sign_of(offset) == -1)
          flagged = recs[i].round;
      }
      prev_offset = offset;
      prev_frozen = frozen;
      prev_i = i;
    }
    flagged_round[who] = flagged;
  }
  {
    int t0 = -1, who0 = 0;
    for (int who = 1; who <= 2; ++who)
      if (flagged_round[who] >= 0 && (t0 < 0 || flagged_round[who] < t0)) {
        t0 = flagged_round[who];
        who0 = who;
      }
    std::vector<int> firsts;
    if (t0 >= 0) {
      firsts.push_back(who0);
      int other = 3 - who0;
      if (flagged_round[other] == t0) firsts.push_back(other);
    }
    for (int who : firsts) {
      int other = 3 - who;
      std::optional<int> prev_offset;
      std::size_t prev_i = 0;
      for (std::size_t i = 0; i < recs.size(); ++i) {
        if (!in_boundary(i) || recs[i].round < t0) { prev_offset.reset(); continue; }
        const auto& bd = (other == 1 ? bd1 : bd2)[i];
        if (!bd) { prev_offset.reset(); continue; }
        const RobotState& r = other == 1 ? recs[i].cfg.r1 : recs[i].cfg.r2;
        int offset = bd->along(recs[i].cfg.res.pos) - bd->along(r.pos);
        if (prev_offset && prev_i + 1 == i &&
            detail::sign_of(*prev_offset) * detail::sign_of(offset) == -1)
          ctx.fail(m_c, recs[i].round,
                   "resource crossed PD(r" + std::to_string(other) + ") after reaching PD(r" +
                       std::to_string(who) + ") at round " + std::to_string(t0));
        prev_offset = offset;
        prev_i = i;
      }
    }
  }

  // (d) A Gather round with both robots still active afterward yields an
  // InitGather configuration again, robots on no common line.
  for (std::size_t i = 0; i + 1 < recs.size(); ++i) {
    if (!in_gather(i) || !both_active(i + 1)) continue;
    const Configuration& nxt = recs[i + 1].cfg;
    if (nxt.r1.pos.x == nxt.r2.pos.x || nxt.r1.pos.y == nxt.r2.pos.y)
      ctx.fail(m_d, recs[i + 1].round, "robots moved onto a common line");
    else if (!detect_init_gather(nxt))
      ctx.fail(m_d, recs[i + 1].round, "InitGather not preserved");
  }

  // (e) During the Gather Phase the resource stays inside the containing
  // rectangle and never sits on L1 or L2.
  std::vector<std::optional<GatherFrame>> frames(recs.size());
  for (std::size_t i = 0; i < recs.size(); ++i) {
    if (!in_gather(i)) continue;
    frames[i] = detect_init_gather(recs[i].cfg);
    if (!frames[i]) {
      ctx.fail(m_e, recs[i].round, "gather-labeled record is not an InitGather configuration");
      continue;
    }
    Vertex res = recs[i].cfg.res.pos;
    if (!frames[i]->r_con.contains(res))
      ctx.fail(m_e, recs[i].round, "resource left the containing rectangle");
    else if (frames[i]->l1.contains(res))
      ctx.fail(m_e, recs[i].round, "resource on L1");
    else if (frames[i]->l2.contains(res))
      ctx.fail(m_e, recs[i].round, "resource on L2");
  }

  // (f) R_Con dimensions never grow, and over any window of 2*T_f+1 gather
  // rounds starting with both dimensions above two, height+width strictly
  // shrinks. The tighter T_f+1 window is evaluated and reported only.
  {
    int window = 2 * t_f + 1;
    int tight_window = t_f + 1;
    int tight_checked = 0, tight_held = 0;
    for (std::size_t i = 0; i + 1 < recs.size(); ++i) {
      if (!in_gather(i) || !in_gather(i + 1) || !frames[i] || !frames[i + 1]) continue;
      if (frames[i + 1]->r_con.height() > frames[i]->r_con.height() ||
          frames[i + 1]->r_con.width() > frames[i]->r_con.width())
        ctx.fail(m_f, recs[i + 1].round, "containing rectangle grew");
    }
    auto run_ok = [&](std::size_t i, int len) {
      for (int k = 0; k <= len; ++k)
        if (i + k >= recs.size() || !in_gather(i + k) || !frames[i + k]) return false;
      return true;
    };
    for (std::size_t i = 0; i < recs.size(); ++i) {
      if (!in_gather(i) || !frames[i]) continue;
      if (frames[i]->r_con.height() <= 2 || frames[i]->r_con.width() <= 2) continue;
      int hw0 = frames[i]->r_con.height() + frames[i]->r_con.width();
      if (run_ok(i, window)) {
        int hw1 = frames[i + window]->r_con.height() + frames[i + window]->r_con.width();
        if (hw1 >= hw0)
          ctx.fail(m_f, recs[i].round,
                   "height+width did not shrink over a " + std::to_string(window) + "-round window");
      }
      if (run_ok(i, tight_window)) {
        ++tight_checked;
        int hw1 = frames[i + tight_window]->r_con.height() + frames[i + tight_window]->r_con.width();
        if (hw1 < hw0) ++tight_held;
      }
    }
    if (tight_checked > 0)
      m_f.detail = "tf+1 window held in " + std::to_string(tight_held) + "/" +
                   std::to_string(tight_checked) + " cases";
  }

  // (g) Once R_Con reaches 2x2, rendezvous follows within T_f+1 rounds at
  // the corner diagonally opposite the door.
  for (std::size_t i = 0; i < recs.size(); ++i) {
    if (!in_gather(i) || !frames[i]) continue;
    if (frames[i]->r_con.height() != 2 || frames[i]->r_con.width() != 2) continue;
    const TraceRecord& last = recs.back();
    if (t.outcome != Outcome::Rendezvous)
      ctx.fail(m_g, recs[i].round, "2x2 containing rectangle without rendezvous");
    else if (t.rounds - recs[i].round > t_f + 1)
      ctx.fail(m_g, recs[i].round,
               "rendezvous took " + std::to_string(t.rounds - recs[i].round) +
                   " rounds from the 2x2 rectangle");
    else if (last.cfg.res.pos != g.far_corner())
      ctx.fail(m_g, last.round, "rendezvous away from the corner opposite the door");
    break;
  }

  return report;
}

// --- Worst-case oracle -------------------------------------------------------

struct SearchLimits {
  std::size_t max_states = 4'000'000;
};

struct Witness {
  Vertex g0;
  std::string entry_seq;
  std::vector<ResourceMove> res_moves;
};

struct WorstCaseResult {
  int m = 0, n = 0, t_f = 0;
  bool branch_entry = false;
  bool non_terminating = false;
  std::string cycle_note;
  int worst_rounds = 0;
  Witness witness;
  std::size_t states_explored = 0;
  int entry_rounds = 0, boundary_rounds = 0, gather_rounds = 0;
};

namespace detail {

inline std::uint64_t oracle_key(const Configuration& c) {
  auto pos_idx = [&](Vertex v) {
    return static_cast<std::uint64_t>(v.y) * c.grid.cols + v.x;
  };
  std::uint64_t k = static_cast<int>(c.r1.status);
  k = k * 1024 + (c.r1.on_grid() ? pos_idx(c.r1.pos) : 0);
  k = k * 4 + static_cast<int>(c.r2.status);
  k = k * 1024 + (c.r2.on_grid() ? pos_idx(c.r2.pos) : 0);
  k = k * 1024 + pos_idx(c.res.pos);
  k = k * 64 + c.res.stay_count;
  k = k * 2 + (c.res.fixed ? 1 : 0);
  return k;
}

struct OracleSuccessor {
  Configuration next;
  ResourceMove res_move;
  bool res_was_free = false;
  std::string entry_chars;
  bool violation = false;
};

inline char entry_char_for(const RobotView& v, const Move& m) {
  if (m.kind == MoveKind::Stay) return 's';
  return m.target.y == v.self.y ? 'x' : 'y';
}

// All one-round outcomes from a staged snapshot: the deterministic robot
// moves (branched over the entry free choice when requested) crossed with
// every legal resource move.
inline std::vector<OracleSuccessor> oracle_successors(const Configuration& staged,
                                                      bool branch_entry) {
  struct RobotOption {
    Move move;
    char entry_char = 0;
  };
  auto options_for = [&](RobotSel sel) {
    std::vector<RobotOption> opts;
    const RobotState& r = staged.robot(sel);
    if (!r.active()) {
      opts.push_back({Move::stay(), 0});
      return opts;
    }
    RobotView v = robot_view(staged, sel);
    Move policy = decide(v);
    if (branch_entry && EntryChooser::applies(v)) {
      auto add = [&](Move m) {
        for (const auto& o : opts)
          if (o.move == m) return;
        opts.push_back({m, entry_char_for(v, m)});
      };
      for (Vertex u : grid_neighbors(v.rows, v.cols, v.self)) add(Move::step(u));
      add(policy);
    } else {
      opts.push_back({policy, 0});
    }
    return opts;
  };

  auto o1 = options_for(RobotSel::First);
  auto o2 = options_for(RobotSel::Second);
  bool res_free = !staged.res.fixed;
  std::vector<ResourceMove> res_moves =
      res_free ? legal_resource_moves(staged) : std::vector<ResourceMove>{Move::stay()};

  std::vector<OracleSuccessor> out;
  out.reserve(o1.size() * o2.size() * res_moves.size());
  for (const auto& a : o1)
    for (const auto& b : o2)
      for (const auto& mres : res_moves) {
        StepResult sr = apply_round(staged, a.move, b.move, mres);
        OracleSuccessor s;
        s.next = sr.next;
        s.res_move = mres;
        s.res_was_free = res_free;
        if (a.entry_char) s.entry_chars.push_back(a.entry_char);
        if (b.entry_char) s.entry_chars.push_back(b.entry_char);
        s.violation = sr.violation;
        out.push_back(std::move(s));
      }
  return out;
}

}  // namespace detail

// Exhaustive longest-capture-time search over every initial resource
// placement. Robots follow the deterministic policy; the adversary owns g0,
// every legal resource move, and (when branch_entry) the entry free choice.
inline WorstCaseResult worst_case_rounds(int m, int n, int t_f, bool branch_entry,
                                         const GridSpec* grid_override = nullptr,
                                         SearchLimits limits = {}) {
  GridSpec g = grid_override ? *grid_override : build_grid(m, n, {0, 0});
  WorstCaseResult result;
  result.m = m;
  result.n = n;
  result.t_f = t_f;
  result.branch_entry = branch_entry;

  std::unordered_map<std::uint64_t, int> value;
  std::unordered_map<std::uint64_t, signed char> color;  // 1 gray, 2 black

  struct Frame {
    std::uint64_t key;
    std::vector<detail::OracleSuccessor> succs;
    std::size_t next = 0;
    int best = 0;
    bool terminal = false;
    int round_hint = 0;
  };

  auto make_frame = [&](const Configuration& cfg) {
    Frame f;
    f.key = detail::oracle_key(cfg);
    f.round_hint = cfg.round;
    Configuration staged = stage_entry(cfg, nullptr);
    if (classify_phase(staged) == Phase::Done) {
      f.terminal = true;
      return f;
    }
    f.succs = detail::oracle_successors(staged, branch_entry);
    for (const auto& s : f.succs)
      if (s.violation)
        throw Error(Errc::InvalidParams,
                    "protocol violation reachable in oracle search at round " +
                        std::to_string(staged.round));
    return f;
  };

  std::vector<Configuration> roots;
  for (int y = 0; y < m; ++y)
    for (int x = 0; x < n; ++x) {
      Vertex g0{x, y};
      if (g0 == g.door) continue;
      SimParams p{g, t_f, g0, 1, 0, ""};
      roots.push_back(init_episode(p));
    }

  for (const Configuration& root : roots) {
    std::uint64_t rk = detail::oracle_key(root);
    if (color.count(rk)) continue;
    std::vector<Frame> stack;
    color[rk] = 1;
    stack.push_back(make_frame(root));
    while (!stack.empty()) {
      Frame& f = stack.back();
      if (!f.terminal && f.next < f.succs.size()) {
        const Configuration& child = f.succs[f.next].next;
        std::uint64_t ck = detail::oracle_key(child);
        auto it = color.find(ck);
        if (it != color.end() && it->second == 1) {
          result.non_terminating = true;
          std::ostringstream os;
          os << "cycle through state at search depth " << stack.size()
             << " (res " << to_string(child.res.pos) << ", stay "
             << child.res.stay_count << ")";
          result.cycle_note = os.str();
          result.states_explored = value.size() + stack.size();
          return result;
        }
        if (it != color.end() && it->second == 2) {
          f.best = std::max(f.best, 1 + value.at(ck));
          ++f.next;
          continue;
        }
        if (value.size() + stack.size() >= limits.max_states)
          throw Error(Errc::StateSpaceExceeded,
                      "oracle exceeded " + std::to_string(limits.max_states) + " states");
        color[ck] = 1;
        stack.push_back(make_frame(child));
        continue;
      }
      value[f.key] = f.terminal ? 0 : f.best;
      color[f.key] = 2;
      stack.pop_back();
    }
  }
  result.states_explored = value.size();

  const Configuration* best_root = nullptr;
  for (const Configuration& root : roots) {
    int v = value.at(detail::oracle_key(root));
    if (!best_root || v > result.worst_rounds) {
      result.worst_rounds = v;
      best_root = &root;
    }
  }

  // Reconstruct the witness along a worst path from the worst root.
  Configuration cfg = *best_root;
  result.witness.g0 = cfg.res.pos;
  while (true) {
    Configuration staged = stage_entry(cfg, nullptr);
    if (classify_phase(staged) == Phase::Done) break;
    switch (classify_phase(staged)) {
      case Phase::Entry: ++result.entry_rounds; break;
      case Phase::Boundary: ++result.boundary_rounds; break;
      case Phase::Gather: ++result.gather_rounds; break;
      case Phase::Done: break;
    }
    int want = value.at(detail::oracle_key(cfg)) - 1;
    auto succs = detail::oracle_successors(staged, branch_entry);
    const detail::OracleSuccessor* chosen = nullptr;
    for (const auto& s : succs)
      if (value.at(detail::oracle_key(s.next)) == want) {
        chosen = &s;
        break;
      }
    if (!chosen)
      throw Error(Errc::StateSpaceExceeded, "witness reconstruction lost the worst path");
    result.witness.entry_seq += chosen->entry_chars;
    if (chosen->res_was_free) result.witness.res_moves.push_back(chosen->res_move);
    cfg = chosen->next;
  }
  return result;
}

// --- Bound report ------------------------------------------------------------

struct BoundReport {
  std::string table;
  std::string csv;
  bool any_exceeding = false;
  bool any_non_terminating = false;
  double ratio_min = 0.0;
  double ratio_max = 0.0;
};

inline BoundReport bound_report(const std::vector<WorstCaseResult>& results, double c = 12.0) {
  BoundReport rep;
  std::ostringstream table, csv;
  csv << "m,n,tf,worst_rounds,envelope,boundary_worst,gather_worst,states_explored\n";
  table << "   m   n  tf  worst  envelope   ratio  boundary  gather    states\n";
  bool first = true;
  for (const auto& r : results) {
    double envelope = c * (r.t_f + 1) * (r.m + r.n);
    if (r.non_terminating) {
      rep.any_non_terminating = true;
      table << "  " << r.m << "   " << r.n << "   " << r.t_f
            << "  NON-TERMINATING: " << r.cycle_note << '\n';
      csv << r.m << ',' << r.n << ',' << r.t_f << ",-1," << envelope << ",-1,-1,"
          << r.states_explored << '\n';
      continue;
    }
    double ratio = static_cast<double>(r.worst_rounds) / ((r.t_f + 1) * (r.m + r.n));
    if (first || ratio < rep.ratio_min) rep.ratio_min = ratio;
    if (first || ratio > rep.ratio_max) rep.ratio_max = ratio;
    first = false;
    bool flag = r.worst_rounds > envelope;
    rep.any_exceeding = rep.any_exceeding || flag;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%4d%4d%4d%7d%10.0f%8.2f%10d%8d%10zu%s\n", r.m, r.n,
                  r.t_f, r.worst_rounds, envelope, ratio, r.boundary_rounds,
                  r.gather_rounds, r.states_explored, flag ? "  <-- exceeds envelope" : "");
    table << buf;
    csv << r.m << ',' << r.n << ',' << r.t_f << ',' << r.worst_rounds << ',' << envelope
        << ',' << r.boundary_rounds << ',' << r.gather_rounds << ',' << r.states_explored
        << '\n';
  }
  rep.table = table.str();
  rep.csv = csv.str();
  return rep;
}

// --- Equivariance suite ------------------------------------------------------

using PolicyFn = std::function<Move(const RobotView&)>;

namespace detail {

inline bool fixed_by_axis_swap(const RobotView& v) {
  if (v.rows != v.cols) return false;
  for (const auto& s : grid_symmetries(v.rows, v.cols)) {
    if (!s.swap_axes) continue;
    if (transform_view(s, v) == v) return true;
  }
  return false;
}

// The approach free-choice views exempted from the strict equality check: a
// fixed resource at equal axis gaps on a view that an axis-swapping symmetry
// fixes. No oriented step can be equivariant there.
inline bool free_approach_view(const RobotView& v) {
  if (!v.other_on_res) return false;
  int dx = std::abs(v.res.x - v.self.x), dy = std::abs(v.res.y - v.self.y);
  return dx == dy && dx != 0 && fixed_by_axis_swap(v);
}

inline bool valid_approach_step(const RobotView& v, const Move& m) {
  if (m.kind != MoveKind::Step) return false;
  if (hop_distance(m.target, v.res) != hop_distance(v.self, v.res) - 1) return false;
  return !(is_corner_vertex(v.rows, v.cols, m.target) && m.target != v.res);
}

}  // namespace detail

// Exhaustively checks decide()'s symmetry equivariance over every placement
// of self, other (including absent and on-res) and the resource on g, under
// the full symmetry group of the rectangle, plus label-swap invariance.
inline InvariantReport equivariance_suite(const GridSpec& g, const PolicyFn& policy_in = {}) {
  PolicyFn policy = policy_in ? policy_in : PolicyFn([](const RobotView& v) { return decide(v); });
  InvariantReport report;
  report.monitors = {{"symmetry_equivariance"}, {"label_swap_invariance"}};
  MonitorResult& m_sym = report.monitors[0];
  MonitorResult& m_swap = report.monitors[1];

  auto group = grid_symmetries(g.rows, g.cols);
  long checked = 0;
  for (int sy = 0; sy < g.rows && m_sym.passed; ++sy)
    for (int sx = 0; sx < g.cols && m_sym.passed; ++sx) {
      Vertex self{sx, sy};
      for (int door_flag = 0; door_flag <= (is_corner_vertex(g.rows, g.cols, self) ? 1 : 0);
           ++door_flag) {
        for (int oy = -1; oy < g.rows; ++oy)
          for (int ox = 0; ox < (oy < 0 ? 1 : g.cols); ++ox) {
            std::optional<Vertex> other;
            if (oy >= 0) {
              other = Vertex{ox, oy};
              if (*other == self) continue;
            }
            for (int ry = 0; ry < g.rows; ++ry)
              for (int rx = 0; rx < g.cols; ++rx) {
                Vertex res{rx, ry};
                if (res == self) continue;
                RobotView v{g.rows, g.cols, self, door_flag != 0, other,
                            other && *other == res, res};
                Move a = policy(v);
                for (const auto& s : group) {
                  RobotView tv = transform_view(s, v);
                  Move b = policy(tv);
                  if (b == transform_move(s, v.rows, v.cols, a)) continue;
                  if (detail::free_approach_view(v) && detail::valid_approach_step(v, a) &&
                      detail::valid_approach_step(tv, b))
                    continue;
                  m_sym.passed = false;
                  m_sym.failure_round = 0;
                  m_sym.detail = "view self=" + to_string(v.self) +
                                 (v.other ? " other=" + to_string(*v.other) : " other=absent") +
                                 " res=" + to_string(v.res) +
                                 (v.at_door ? " at_door" : "") + " breaks equivariance";
                  break;
                }
                ++checked;
                if (!m_sym.passed) break;
              }
            if (!m_sym.passed) break;
          }
        if (!m_sym.passed) break;
      }
    }
  if (m_sym.passed)
    m_sym.detail = std::to_string(checked) + " views x " + std::to_string(group.size()) +
                   " symmetries";

  // Label swap: the view carries no identity, so swapping which robot is
  // "first" must leave every decision unchanged.
  for (int ay = 0; ay < g.rows && m_swap.passed; ++ay)
    for (int ax = 0; ax < g.cols && m_swap.passed; ++ax)
      for (int by = 0; by < g.rows && m_swap.passed; ++by)
        for (int bx = 0; bx < g.cols && m_swap.passed; ++bx) {
          Vertex pa{ax, ay}, pb{bx, by};
          if (pa == pb) continue;
          for (int ry = 0; ry < g.rows; ++ry)
            for (int rx = 0; rx < g.cols; ++rx) {
              Vertex res{rx, ry};
              if (res == pa || res == pb) continue;
              Configuration c1;
              c1.grid = g;
              c1.t_f = 1;
              c1.r1 = {RobotStatus::Active, pa};
              c1.r2 = {RobotStatus::Active, pb};
              c1.res = {res, 0, false};
              Configuration c2 = c1;
              std::swap(c2.r1, c2.r2);
              if (!(policy(robot_view(c1, RobotSel::First)) ==
                    policy(robot_view(c2, RobotSel::Second)))) {
                m_swap.passed = false;
                m_swap.detail = "decision differs after label swap at " + to_string(pa);
                break;
              }
            }
        }

  return report;
}

}  // namespace dynrv
