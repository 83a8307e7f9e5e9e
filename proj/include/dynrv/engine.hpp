#pragma once

// The round engine. One FSYNC round: stage the second robot's entry when the
// door is free, snapshot, let every active robot and the resource decide from
// that snapshot, then resolve all moves simultaneously. Resolution order:
// robot-robot edge swaps are protocol violations; a robot/resource edge swap
// invokes the carry rule; remaining moves land; co-location with the resource
// terminates robots and fixes the resource; robots sharing a vertex anywhere
// else is a violation. The SSYNC variant moves only adversary-activated
// robots while the resource moves every round.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "dynrv/adversary.hpp"
#include "dynrv/configuration.hpp"
#include "dynrv/policy.hpp"

namespace dynrv {

struct SimParams {
  GridSpec grid;
  int t_f = 1;
  Vertex g0;
  int max_rounds = 1;
  std::uint64_t seed = 0;
  std::string entry_seq;  // optional per-round overrides of the entry free choice
};

// The default episode budget used by the CLI: generous against the
// O(T_f x (m+n)) termination bound.
inline int default_max_rounds(int m, int n, int t_f) { return 10 * (t_f + 1) * (m + n); }

inline void validate_params(const SimParams& p) {
  if (p.t_f < 1) throw Error(Errc::InvalidParams, "t_f must be at least 1");
  if (p.max_rounds < 1) throw Error(Errc::InvalidParams, "max_rounds must be at least 1");
  if (!p.grid.contains(p.g0))
    throw Error(Errc::InvalidParams, "g0 " + to_string(p.g0) + " is outside the grid");
  if (p.g0 == p.grid.door)
    throw Error(Errc::InvalidParams, "g0 must not be the door vertex");
  for (char c : p.entry_seq)
    if (c != 'x' && c != 'y' && c != 's')
      throw Error(Errc::InvalidParams, "entry_seq may only contain 'x', 'y', 's'");
}

enum class EventKind {
  Entered,
  EdgeCarry,
  CoLocated,
  RobotTerminated,
  ProtocolViolation,
  ResourceFixed,
};

inline const char* event_kind_name(EventKind k) {
  switch (k) {
    case EventKind::Entered: return "entered";
    case EventKind::EdgeCarry: return "edge_carry";
    case EventKind::CoLocated: return "co_located";
    case EventKind::RobotTerminated: return "robot_terminated";
    case EventKind::ProtocolViolation: return "protocol_violation";
    case EventKind::ResourceFixed: return "resource_fixed";
  }
  return "?";
}

struct RoundEvent {
  EventKind kind;
  int subject = 0;  // 1 or 2 for a robot, 0 for none
  std::string detail;
};

enum class Outcome { Rendezvous, MaxRoundsExceeded, Violation, NoEscape };

inline const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Rendezvous: return "rendezvous";
    case Outcome::MaxRoundsExceeded: return "max_rounds_exceeded";
    case Outcome::Violation: return "violation";
    case Outcome::NoEscape: return "no_escape";
  }
  return "?";
}

struct TraceRecord {
  int round = 0;
  Configuration cfg;               // state at the start of this round, post staging
  Phase phase = Phase::Entry;      // phase executed from this configuration
  std::vector<RoundEvent> events;  // what happened during this round
};

struct Trace {
  SimParams params;
  std::string strategy_name;
  std::string scheduler = "fsync";
  std::vector<TraceRecord> records;
  Outcome outcome = Outcome::MaxRoundsExceeded;
  int rounds = 0;
};

inline Configuration init_episode(const SimParams& p) {
  validate_params(p);
  Configuration cfg;
  cfg.grid = p.grid;
  cfg.round = 0;
  cfg.t_f = p.t_f;
  cfg.r1 = {RobotStatus::Active, p.grid.door};
  cfg.r2 = {RobotStatus::Outside, {}};
  cfg.res = {p.g0, 0, false};
  return cfg;
}

// The second robot materializes at the door at the start of the first round
// in which no robot occupies the door. If the resource happens to sit on the
// door at that instant the entrant is immediately co-located and terminates.
inline Configuration stage_entry(const Configuration& cfg, std::vector<RoundEvent>* events) {
  if (cfg.r2.status != RobotStatus::Outside) return cfg;
  if (cfg.r1.on_grid() && cfg.r1.pos == cfg.grid.door) return cfg;
  Configuration next = cfg;
  next.r2 = {RobotStatus::Active, cfg.grid.door};
  if (events) events->push_back({EventKind::Entered, 2, ""});
  if (next.res.pos == cfg.grid.door) {
    next.r2.status = RobotStatus::Terminated;
    next.res.stay_count = 0;
    if (events) {
      events->push_back({EventKind::CoLocated, 2, "entered onto the resource"});
      events->push_back({EventKind::RobotTerminated, 2, ""});
      if (!next.res.fixed) events->push_back({EventKind::ResourceFixed, 0, ""});
    }
    next.res.fixed = true;
  }
  return next;
}

struct StepResult {
  Configuration next;
  std::vector<RoundEvent> events;
  bool violation = false;
};

// Simultaneous application of one round's proposals to a staged snapshot.
inline StepResult apply_round(const Configuration& staged, Move m1, Move m2, Move mres) {
  StepResult out;
  Configuration next = staged;
  next.round = staged.round + 1;

  auto dest = [](const RobotState& r, const Move& m) {
    return (r.active() && m.kind == MoveKind::Step) ? m.target : r.pos;
  };
  Vertex d1 = dest(staged.r1, m1);
  Vertex d2 = dest(staged.r2, m2);
  Vertex res_from = staged.res.pos;
  Vertex res_to = mres.kind == MoveKind::Step ? mres.target : res_from;

  if (staged.r1.active() && staged.r2.active() && d1 == staged.r2.pos &&
      d2 == staged.r1.pos) {
    out.violation = true;
    out.events.push_back({EventKind::ProtocolViolation, 0,
                          "robots crossed each other on an edge"});
  }

  // Carry rule: the robot crossing the resource's edge ends at its own
  // destination together with the now-fixed resource.
  int carrier = 0;
  for (int who = 1; who <= 2; ++who) {
    const RobotState& r = who == 1 ? staged.r1 : staged.r2;
    const Move& m = who == 1 ? m1 : m2;
    if (r.active() && m.kind == MoveKind::Step && m.target == res_from &&
        res_to == r.pos && res_to != res_from) {
      carrier = who;
      break;
    }
  }

  if (staged.r1.active()) next.r1.pos = d1;
  if (staged.r2.active()) next.r2.pos = d2;
  Vertex res_final = carrier != 0 ? (carrier == 1 ? d1 : d2) : res_to;
  next.res.pos = res_final;

  bool was_fixed = staged.res.fixed;
  bool fixed_now = was_fixed;
  if (carrier != 0) {
    out.events.push_back({EventKind::EdgeCarry, carrier, "carried the resource"});
    (carrier == 1 ? next.r1 : next.r2).status = RobotStatus::Terminated;
    out.events.push_back({EventKind::RobotTerminated, carrier, ""});
    fixed_now = true;
  }
  for (int who = 1; who <= 2; ++who) {
    RobotState& r = who == 1 ? next.r1 : next.r2;
    if (who == carrier || !r.active()) continue;
    if (r.pos == res_final) {
      out.events.push_back({EventKind::CoLocated, who, ""});
      r.status = RobotStatus::Terminated;
      out.events.push_back({EventKind::RobotTerminated, who, ""});
      fixed_now = true;
    }
  }
  if (fixed_now && !was_fixed) out.events.push_back({EventKind::ResourceFixed, 0, ""});
  next.res.fixed = fixed_now;

  if (next.r1.on_grid() && next.r2.on_grid() && next.r1.pos == next.r2.pos &&
      next.r1.pos != res_final) {
    out.violation = true;
    out.events.push_back({EventKind::ProtocolViolation, 0,
                          "robots co-located away from the resource"});
  }

  if (fixed_now) next.res.stay_count = 0;
  else if (res_final != res_from) next.res.stay_count = 0;
  else next.res.stay_count = staged.res.stay_count + 1;

  out.next = next;
  return out;
}

// Consumes the entry free-choice overrides of a witness replay, one character
// per round in which the deciding robot stands at the door with no other
// robot on the grid ('x'/'y': step along that axis, 's': stay).
class EntryChooser {
 public:
  EntryChooser() = default;
  explicit EntryChooser(std::string seq) : seq_(std::move(seq)) {}

  static bool applies(const RobotView& v) { return v.at_door && !v.other; }

  std::optional<Move> next(const RobotView& v) {
    if (idx_ >= seq_.size()) return std::nullopt;
    char c = seq_[idx_++];
    if (c == 's') return Move::stay();
    for (Vertex u : grid_neighbors(v.rows, v.cols, v.self)) {
      if (c == 'x' && u.y == v.self.y) return Move::step(u);
      if (c == 'y' && u.x == v.self.x) return Move::step(u);
    }
    throw Error(Errc::InvalidParams, "entry override does not match the door view");
  }

 private:
  std::string seq_;
  std::size_t idx_ = 0;
};

namespace detail {

inline void require_legal(const Configuration& cfg, const ResourceMove& m,
                          const std::string& who) {
  for (const auto& legal : legal_resource_moves(cfg))
    if (legal == m) return;
  std::string what = who + " chose an illegal resource move at round " +
                     std::to_string(cfg.round) + ": " +
                     (m.kind == MoveKind::Stay ? "stay" : "step to " + to_string(m.target));
  throw Error(Errc::IllegalScript, what);
}

inline StepResult step_from_staged(const Configuration& staged, ResourceStrategy& strategy,
                                   EntryChooser* entry) {
  Move m1 = Move::stay(), m2 = Move::stay();
  for (int who = 1; who <= 2; ++who) {
    const RobotState& r = who == 1 ? staged.r1 : staged.r2;
    if (!r.active()) continue;
    RobotView v = robot_view(staged, who == 1 ? RobotSel::First : RobotSel::Second);
    Move m = Move::stay();
    if (entry && EntryChooser::applies(v)) {
      if (auto forced = entry->next(v)) m = *forced;
      else m = decide(v);
    } else {
      m = decide(v);
    }
    (who == 1 ? m1 : m2) = m;
  }
  Move mres = Move::stay();
  if (!staged.res.fixed) {
    mres = strategy.choose(staged);
    require_legal(staged, mres, strategy.name());
  }
  return apply_round(staged, m1, m2, mres);
}

}  // namespace detail

// One full FSYNC round (entry staging included) from an unstaged snapshot.
inline StepResult fsync_step(const Configuration& cfg, ResourceStrategy& strategy,
                             EntryChooser* entry = nullptr) {
  std::vector<RoundEvent> staging_events;
  Configuration staged = stage_entry(cfg, &staging_events);
  StepResult r = detail::step_from_staged(staged, strategy, entry);
  r.events.insert(r.events.begin(), staging_events.begin(), staging_events.end());
  return r;
}

inline Trace run_episode(const SimParams& p, ResourceStrategy& strategy) {
  Trace t;
  t.params = p;
  t.strategy_name = strategy.name();
  t.scheduler = "fsync";
  Configuration cfg = init_episode(p);
  EntryChooser entry(p.entry_seq);
  for (int executed = 0;; ++executed) {
    if (classify_phase(cfg) == Phase::Done) {
      t.records.push_back({cfg.round, cfg, Phase::Done, {}});
      t.outcome = Outcome::Rendezvous;
      break;
    }
    if (executed >= p.max_rounds) {
      t.records.push_back({cfg.round, cfg, classify_phase(cfg), {}});
      t.outcome = Outcome::MaxRoundsExceeded;
      break;
    }
    std::vector<RoundEvent> events;
    Configuration staged = stage_entry(cfg, &events);
    if (classify_phase(staged) == Phase::Done) {
      t.records.push_back({staged.round, staged, Phase::Done, std::move(events)});
      t.outcome = Outcome::Rendezvous;
      cfg = staged;
      break;
    }
    StepResult sr = detail::step_from_staged(staged, strategy, &entry);
    events.insert(events.end(), sr.events.begin(), sr.events.end());
    t.records.push_back({staged.round, staged, classify_phase(staged), std::move(events)});
    cfg = sr.next;
    if (sr.violation) {
      t.records.push_back({cfg.round, cfg, classify_phase(cfg), {}});
      t.outcome = Outcome::Violation;
      break;
    }
  }
  t.rounds = cfg.round;
  return t;
}

// Semi-synchronous loop: the adversary picks the activation set each round,
// the resource moves every round. NoEscape raised by the adversary becomes a
// distinguished outcome instead of an aborted run.
inline Trace ssync_run(const SimParams& p, SsyncAdversary& adversary) {
  Trace t;
  t.params = p;
  t.strategy_name = adversary.name();
  t.scheduler = "ssync";
  Configuration cfg = init_episode(p);
  for (int executed = 0;; ++executed) {
    if (classify_phase(cfg) == Phase::Done) {
      t.records.push_back({cfg.round, cfg, Phase::Done, {}});
      t.outcome = Outcome::Rendezvous;
      break;
    }
    if (executed >= p.max_rounds) {
      t.records.push_back({cfg.round, cfg, classify_phase(cfg), {}});
      t.outcome = Outcome::MaxRoundsExceeded;
      break;
    }
    std::vector<RoundEvent> events;
    Configuration staged = stage_entry(cfg, &events);
    if (classify_phase(staged) == Phase::Done) {
      t.records.push_back({staged.round, staged, Phase::Done, std::move(events)});
      t.outcome = Outcome::Rendezvous;
      cfg = staged;
      break;
    }
    SsyncDecision decision;
    try {
      decision = adversary.decide(staged);
    } catch (const Error& e) {
      if (e.code() != Errc::NoEscape) throw;
      events.push_back({EventKind::ProtocolViolation, 0, e.what()});
      t.records.push_back({staged.round, staged, classify_phase(staged), std::move(events)});
      t.outcome = Outcome::NoEscape;
      cfg = staged;
      break;
    }
    Move m1 = Move::stay(), m2 = Move::stay();
    if (decision.activate_r1 && staged.r1.active())
      m1 = decide(robot_view(staged, RobotSel::First));
    if (decision.activate_r2 && staged.r2.active())
      m2 = decide(robot_view(staged, RobotSel::Second));
    Move mres = Move::stay();
    if (!staged.res.fixed) {
      mres = decision.res_move;
      detail::require_legal(staged, mres, adversary.name());
    }
    StepResult sr = apply_round(staged, m1, m2, mres);
    events.insert(events.end(), sr.events.begin(), sr.events.end());
    t.records.push_back({staged.round, staged, classify_phase(staged), std::move(events)});
    cfg = sr.next;
    if (sr.violation) {
      t.records.push_back({cfg.round, cfg, classify_phase(cfg), {}});
      t.outcome = Outcome::Violation;
      break;
    }
  }
  t.rounds = cfg.round;
  return t;
}

}  // namespace dynrv
