#pragma once

// Seeded negative traces: each one plants a specific invariant violation and
// names the monitor that must reject it.

#include <string>
#include <vector>

#include "dynrv/verifier.hpp"

namespace dynrv::testing {

struct NegativeCase {
  std::string monitor;
  Trace trace;
};

inline Configuration neg_cfg(const GridSpec& g, int round, RobotStatus s1, Vertex p1,
                             RobotStatus s2, Vertex p2, Vertex res, int t_f) {
  Configuration c;
  c.grid = g;
  c.round = round;
  c.t_f = t_f;
  c.r1 = {s1, p1};
  c.r2 = {s2, p2};
  c.res = {res, 0, false};
  return c;
}

inline std::vector<NegativeCase> negative_traces() {
  std::vector<NegativeCase> out;
  auto A = RobotStatus::Active;
  auto base_params = [](const GridSpec& g, Vertex g0) {
    SimParams p;
    p.grid = g;
    p.t_f = 1;
    p.g0 = g0;
    p.max_rounds = 100;
    return p;
  };

  {
    // A robot parked on a corner during the boundary phase.
    GridSpec g = build_grid(5, 5, {0, 0});
    Trace t;
    t.params = base_params(g, {3, 3});
    t.outcome = Outcome::MaxRoundsExceeded;
    t.rounds = 1;
    t.records.push_back({0, neg_cfg(g, 0, A, {0, 4}, A, {2, 0}, {3, 3}, 1), Phase::Boundary, {}});
    t.records.push_back({1, neg_cfg(g, 1, A, {0, 4}, A, {3, 0}, {3, 3}, 1), Phase::Boundary, {}});
    out.push_back({"boundary_discipline", std::move(t)});
  }
  {
    // dist(r1) blowing up after the resource reached PD(r1).
    GridSpec g = build_grid(5, 5, {0, 0});
    Trace t;
    t.params = base_params(g, {3, 2});
    t.outcome = Outcome::MaxRoundsExceeded;
    t.rounds = 1;
    t.records.push_back({0, neg_cfg(g, 0, A, {0, 2}, A, {2, 0}, {3, 2}, 1), Phase::Boundary, {}});
    t.records.push_back({1, neg_cfg(g, 1, A, {0, 1}, A, {2, 0}, {3, 4}, 1), Phase::Boundary, {}});
    out.push_back({"pd_dist_persistence", std::move(t)});
  }
  {
    // The resource strictly crossing the other robot's PD after reaching one.
    GridSpec g = build_grid(6, 6, {0, 0});
    Trace t;
    t.params = base_params(g, {3, 1});
    t.outcome = Outcome::MaxRoundsExceeded;
    t.rounds = 2;
    t.records.push_back({0, neg_cfg(g, 0, A, {0, 2}, A, {1, 0}, {3, 1}, 1), Phase::Boundary, {}});
    t.records.push_back({1, neg_cfg(g, 1, A, {0, 2}, A, {2, 0}, {3, 2}, 1), Phase::Boundary, {}});
    t.records.push_back({2, neg_cfg(g, 2, A, {0, 2}, A, {3, 0}, {2, 2}, 1), Phase::Boundary, {}});
    out.push_back({"pd_other_never_crossed", std::move(t)});
  }
  {
    // Robots landing on a common line right after a gather round.
    GridSpec g = build_grid(6, 6, {0, 0});
    Trace t;
    t.params = base_params(g, {4, 3});
    t.outcome = Outcome::MaxRoundsExceeded;
    t.rounds = 1;
    t.records.push_back({0, neg_cfg(g, 0, A, {0, 3}, A, {4, 0}, {4, 3}, 1), Phase::Gather, {}});
    t.records.push_back({1, neg_cfg(g, 1, A, {1, 3}, A, {4, 3}, {4, 2}, 1), Phase::Boundary, {}});
    out.push_back({"init_gather_preserved", std::move(t)});
  }
  {
    // The resource parked on L2 in a gather-labeled record.
    GridSpec g = build_grid(6, 6, {0, 0});
    Trace t;
    t.params = base_params(g, {4, 0});
    t.outcome = Outcome::MaxRoundsExceeded;
    t.rounds = 0;
    t.records.push_back({0, neg_cfg(g, 0, A, {0, 1}, A, {3, 0}, {4, 0}, 1), Phase::Gather, {}});
    out.push_back({"rcon_exclusion", std::move(t)});
  }
  {
    // The containing rectangle growing between gather rounds.
    GridSpec g = build_grid(6, 6, {0, 0});
    Trace t;
    t.params = base_params(g, {4, 3});
    t.outcome = Outcome::MaxRoundsExceeded;
    t.rounds = 1;
    t.records.push_back({0, neg_cfg(g, 0, A, {2, 3}, A, {4, 1}, {4, 3}, 1), Phase::Gather, {}});
    t.records.push_back({1, neg_cfg(g, 1, A, {1, 3}, A, {4, 1}, {4, 3}, 1), Phase::Gather, {}});
    out.push_back({"rcon_monotone", std::move(t)});
  }
  {
    // A 2x2 containing rectangle that never resolves into a rendezvous.
    GridSpec g = build_grid(6, 6, {0, 0});
    Trace t;
    t.params = base_params(g, {5, 5});
    t.outcome = Outcome::MaxRoundsExceeded;
    t.rounds = 0;
    t.records.push_back({0, neg_cfg(g, 0, A, {4, 5}, A, {5, 4}, {5, 5}, 1), Phase::Gather, {}});
    out.push_back({"endgame_2x2", std::move(t)});
  }
  return out;
}

}  // namespace dynrv::testing
