#pragma once

// JSONL trace format, one self-describing object per line:
//   header line:  type=header, schema, grid dims, door, tf, g0, strategy,
//                 seed, max_rounds, entry_seq, scheduler
//   record lines: type=record, round, r1{status,x,y}, r2{...},
//                 res{x,y,fixed,stay}, phase, events[]
//   final line:   type=outcome, outcome, rounds
// Keys are emitted sorted, so identical runs serialize byte-identically.

#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "dynrv/engine.hpp"

namespace dynrv {

namespace detail {

inline nlohmann::json robot_json(const RobotState& r) {
  nlohmann::json j;
  switch (r.status) {
    case RobotStatus::Outside: j["status"] = "outside"; return j;
    case RobotStatus::Active: j["status"] = "active"; break;
    case RobotStatus::Terminated: j["status"] = "terminated"; break;
  }
  j["x"] = r.pos.x;
  j["y"] = r.pos.y;
  return j;
}

inline RobotState robot_from_json(const nlohmann::json& j) {
  RobotState r;
  std::string s = j.at("status").get<std::string>();
  if (s == "outside") {
    r.status = RobotStatus::Outside;
    return r;
  }
  r.status = s == "active" ? RobotStatus::Active : RobotStatus::Terminated;
  r.pos = {j.at("x").get<int>(), j.at("y").get<int>()};
  return r;
}

inline Phase phase_from_name(const std::string& s) {
  if (s == "entry") return Phase::Entry;
  if (s == "gather") return Phase::Gather;
  if (s == "boundary") return Phase::Boundary;
  if (s == "done") return Phase::Done;
  throw Error(Errc::MalformedTrace, "unknown phase '" + s + "'");
}

inline EventKind event_kind_from_name(const std::string& s) {
  if (s == "entered") return EventKind::Entered;
  if (s == "edge_carry") return EventKind::EdgeCarry;
  if (s == "co_located") return EventKind::CoLocated;
  if (s == "robot_terminated") return EventKind::RobotTerminated;
  if (s == "protocol_violation") return EventKind::ProtocolViolation;
  if (s == "resource_fixed") return EventKind::ResourceFixed;
  throw Error(Errc::MalformedTrace, "unknown event kind '" + s + "'");
}

inline Outcome outcome_from_name(const std::string& s) {
  if (s == "rendezvous") return Outcome::Rendezvous;
  if (s == "max_rounds_exceeded") return Outcome::MaxRoundsExceeded;
  if (s == "violation") return Outcome::Violation;
  if (s == "no_escape") return Outcome::NoEscape;
  throw Error(Errc::MalformedTrace, "unknown outcome '" + s + "'");
}

}  // namespace detail

inline void write_trace(const Trace& t, std::ostream& out) {
  nlohmann::json header{
      {"type", "header"},
      {"schema", "dynrv-trace-v1"},
      {"m", t.params.grid.rows},
      {"n", t.params.grid.cols},
      {"door", {{"x", t.params.grid.door.x}, {"y", t.params.grid.door.y}}},
      {"tf", t.params.t_f},
      {"g0", {{"x", t.params.g0.x}, {"y", t.params.g0.y}}},
      {"strategy", t.strategy_name},
      {"seed", t.params.seed},
      {"max_rounds", t.params.max_rounds},
      {"entry_seq", t.params.entry_seq},
      {"scheduler", t.scheduler},
  };
  out << header.dump() << '\n';
  for (const auto& rec : t.records) {
    nlohmann::json events = nlohmann::json::array();
    for (const auto& e : rec.events) {
      nlohmann::json ej{{"kind", event_kind_name(e.kind)}};
      if (e.subject != 0) ej["subject"] = "r" + std::to_string(e.subject);
      if (!e.detail.empty()) ej["detail"] = e.detail;
      events.push_back(ej);
    }
    nlohmann::json j{
        {"type", "record"},
        {"round", rec.round},
        {"r1", detail::robot_json(rec.cfg.r1)},
        {"r2", detail::robot_json(rec.cfg.r2)},
        {"res",
         {{"x", rec.cfg.res.pos.x},
          {"y", rec.cfg.res.pos.y},
          {"fixed", rec.cfg.res.fixed},
          {"stay", rec.cfg.res.stay_count}}},
        {"phase", phase_name(rec.phase)},
        {"events", events},
    };
    out << j.dump() << '\n';
  }
  nlohmann::json footer{
      {"type", "outcome"}, {"outcome", outcome_name(t.outcome)}, {"rounds", t.rounds}};
  out << footer.dump() << '\n';
}

inline std::string trace_to_string(const Trace& t) {
  std::ostringstream os;
  write_trace(t, os);
  return os.str();
}

inline Trace read_trace(std::istream& in) {
  Trace t;
  std::string line;
  bool have_header = false, have_outcome = false;
  GridSpec grid;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw Error(Errc::MalformedTrace, std::string("bad trace line: ") + e.what());
    }
    try {
      std::string type = j.at("type").get<std::string>();
      if (type == "header") {
        grid = build_grid(j.at("m").get<int>(), j.at("n").get<int>(),
                          {j.at("door").at("x").get<int>(), j.at("door").at("y").get<int>()});
        t.params.grid = grid;
        t.params.t_f = j.at("tf").get<int>();
        t.params.g0 = {j.at("g0").at("x").get<int>(), j.at("g0").at("y").get<int>()};
        t.params.seed = j.at("seed").get<std::uint64_t>();
        t.params.max_rounds = j.at("max_rounds").get<int>();
        t.params.entry_seq = j.at("entry_seq").get<std::string>();
        t.strategy_name = j.at("strategy").get<std::string>();
        t.scheduler = j.at("scheduler").get<std::string>();
        have_header = true;
      } else if (type == "record") {
        if (!have_header) throw Error(Errc::MalformedTrace, "record before header");
        TraceRecord rec;
        rec.round = j.at("round").get<int>();
        rec.cfg.grid = grid;
        rec.cfg.t_f = t.params.t_f;
        rec.cfg.round = rec.round;
        rec.cfg.r1 = detail::robot_from_json(j.at("r1"));
        rec.cfg.r2 = detail::robot_from_json(j.at("r2"));
        rec.cfg.res.pos = {j.at("res").at("x").get<int>(), j.at("res").at("y").get<int>()};
        rec.cfg.res.fixed = j.at("res").at("fixed").get<bool>();
        rec.cfg.res.stay_count = j.at("res").at("stay").get<int>();
        rec.phase = detail::phase_from_name(j.at("phase").get<std::string>());
        for (const auto& ej : j.at("events")) {
          RoundEvent e;
          e.kind = detail::event_kind_from_name(ej.at("kind").get<std::string>());
          if (ej.contains("subject")) {
            std::string s = ej.at("subject").get<std::string>();
            e.subject = s == "r1" ? 1 : 2;
          }
          if (ej.contains("detail")) e.detail = ej.at("detail").get<std::string>();
          rec.events.push_back(e);
        }
        t.records.push_back(std::move(rec));
      } else if (type == "outcome") {
        t.outcome = detail::outcome_from_name(j.at("outcome").get<std::string>());
        t.rounds = j.at("rounds").get<int>();
        have_outcome = true;
      } else {
        throw Error(Errc::MalformedTrace, "unknown line type '" + type + "'");
      }
    } catch (const nlohmann::json::exception& e) {
      throw Error(Errc::MalformedTrace, std::string("trace field error: ") + e.what());
    }
  }
  if (!have_header) throw Error(Errc::MalformedTrace, "trace has no header line");
  if (!have_outcome) throw Error(Errc::MalformedTrace, "trace has no outcome line");
  if (t.records.empty()) throw Error(Errc::MalformedTrace, "trace has no records");
  for (std::size_t i = 0; i < t.records.size(); ++i)
    if (t.records[i].round != static_cast<int>(i))
      throw Error(Errc::MalformedTrace, "trace records are not gap-free from round 0");
  return t;
}

}  // namespace dynrv
