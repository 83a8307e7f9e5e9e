// Acceptance suite: each criterion runs end to end at its stated tolerance
// and prints one pass/fail line. The whole binary is also a ctest target.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <map>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "dynrv/trace_io.hpp"
#include "dynrv/verifier.hpp"

#include "negative_traces.hpp"

using namespace dynrv;

namespace {

void report(int criterion, const std::string& name, bool ok, const std::string& note = "") {
  std::cout << "[criterion " << criterion << "] " << name << ": " << (ok ? "PASS" : "FAIL");
  if (!note.empty()) std::cout << "  (" << note << ")";
  std::cout << std::endl;
}

SimParams base_params(int m, int n, int t_f, Vertex g0, int max_rounds = 0) {
  SimParams p;
  p.grid = build_grid(m, n, {0, 0});
  p.t_f = t_f;
  p.g0 = g0;
  p.max_rounds = max_rounds > 0 ? max_rounds : default_max_rounds(m, n, t_f);
  return p;
}

// Criteria 1, 2 and 7 share the oracle sweep; run it once.
struct OracleSweep {
  std::vector<WorstCaseResult> results;
  double seconds = 0;
};

const OracleSweep& oracle_sweep() {
  static OracleSweep sweep = [] {
    OracleSweep s;
    auto start = std::chrono::steady_clock::now();
    for (int m = 3; m <= 5; ++m)
      for (int n = 3; n <= 5; ++n)
        for (int t_f = 1; t_f <= 3; ++t_f)
          s.results.push_back(worst_case_rounds(m, n, t_f, /*branch_entry=*/true));
    s.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return s;
  }();
  return sweep;
}

}  // namespace

TEST_CASE("criterion 1: exhaustive termination") {
  const OracleSweep& sweep = oracle_sweep();
  bool ok = sweep.results.size() == 27;
  for (const auto& r : sweep.results) {
    INFO(r.m << "x" << r.n << " tf=" << r.t_f);
    CHECK(!r.non_terminating);
    CHECK(r.worst_rounds > 0);
    ok = ok && !r.non_terminating && r.worst_rounds > 0;
  }
  CHECK(sweep.seconds < 60.0);
  ok = ok && sweep.seconds < 60.0;
  char note[96];
  std::snprintf(note, sizeof note, "27 cells, %.1fs", sweep.seconds);
  report(1, "exhaustive termination", ok, note);
}

TEST_CASE("criterion 2: upper-bound envelope") {
  const OracleSweep& sweep = oracle_sweep();
  BoundReport rep = bound_report(sweep.results, 12.0);
  bool ok = !rep.any_exceeding && !rep.any_non_terminating;
  for (const auto& r : sweep.results) {
    INFO(r.m << "x" << r.n << " tf=" << r.t_f << " worst=" << r.worst_rounds);
    CHECK(r.worst_rounds <= 12 * (r.t_f + 1) * (r.m + r.n));
  }
  double spread = rep.ratio_max / rep.ratio_min;
  CHECK(spread < 3.0);
  ok = ok && spread < 3.0;
  char note[96];
  std::snprintf(note, sizeof note, "ratio %.2f..%.2f spread %.2fx", rep.ratio_min,
                rep.ratio_max, spread);
  report(2, "upper-bound envelope", ok, note);
  std::cout << rep.table;
}

TEST_CASE("criterion 3: oscillator lower bound") {
  bool ok = true;
  for (int m = 3; m <= 10; ++m)
    for (int n = 3; n <= 10; ++n)
      for (int t_f = 1; t_f <= 2; ++t_f) {
        GridSpec g = build_grid(m, n, {0, 0});
        OscillatorStrategy osc(g, t_f);
        SimParams p = base_params(m, n, t_f, osc.p());
        Trace t = run_episode(p, osc);
        INFO(m << "x" << n << " tf=" << t_f << " rounds=" << t.rounds);
        CHECK(t.outcome == Outcome::Rendezvous);
        CHECK(t.rounds >= m + n - 1);
        ok = ok && t.outcome == Outcome::Rendezvous && t.rounds >= m + n - 1;
      }
  report(3, "oscillator lower bound >= m+n-1", ok, "m,n in 3..10, tf in 1..2");
}

TEST_CASE("criterion 4: invariant monitors over randomized episodes") {
  long episodes = 0, failures = 0;
  for (int m = 3; m <= 6; ++m)
    for (int n = 3; n <= 6; ++n)
      for (int t_f = 1; t_f <= 3; ++t_f) {
        std::vector<Vertex> g0s;
        for (int y = 0; y < m; ++y)
          for (int x = 0; x < n; ++x)
            if (!(x == 0 && y == 0)) g0s.push_back({x, y});
        for (int i = 0; i < 1000; ++i) {
          SimParams p = base_params(m, n, t_f, g0s[i % g0s.size()]);
          p.seed = 1000003ull * m + 101ull * n + 17ull * t_f + i;
          Trace t;
          if (i % 2 == 0) {
            GreedyEvadeStrategy s;
            t = run_episode(p, s);
          } else {
            StayMaxRandomStrategy s(p.seed);
            t = run_episode(p, s);
          }
          ++episodes;
          InvariantReport rep = check_invariants(t);
          if (!rep.all_passed() || t.outcome != Outcome::Rendezvous) {
            ++failures;
            INFO(m << "x" << n << " tf=" << t_f << " i=" << i << "\n" << rep.summary());
            CHECK(rep.all_passed());
            CHECK(t.outcome == Outcome::Rendezvous);
          }
        }
      }
  bool negatives_ok = true;
  for (const auto& nc : dynrv::testing::negative_traces()) {
    InvariantReport rep = check_invariants(nc.trace);
    const MonitorResult* m = rep.find(nc.monitor);
    bool rejected = m && !m->passed;
    CHECK(rejected);
    negatives_ok = negatives_ok && rejected;
  }
  bool ok = failures == 0 && negatives_ok;
  report(4, "invariant monitors", ok,
         std::to_string(episodes) + " episodes, " + std::to_string(failures) + " failures");
}

TEST_CASE("criterion 5: ssync escape support") {
  bool ok = true;
  double worst_cell = 0;
  for (int m = 4; m <= 6; ++m)
    for (int n = 4; n <= 6; ++n)
      for (int t_f = 1; t_f <= 2; ++t_f) {
        auto start = std::chrono::steady_clock::now();
        SimParams p = base_params(m, n, t_f, {n / 2, m / 2}, 5000);
        EscapeAdversary esc;
        Trace t = ssync_run(p, esc);
        double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        worst_cell = std::max(worst_cell, secs);
        INFO(m << "x" << n << " tf=" << t_f);
        CHECK(t.outcome == Outcome::MaxRoundsExceeded);
        CHECK(t.rounds == 5000);
        CHECK(secs < 5.0);
        ok = ok && t.outcome == Outcome::MaxRoundsExceeded && secs < 5.0;
      }
  char note[96];
  std::snprintf(note, sizeof note, "18 cells x 5000 rounds, slowest %.2fs", worst_cell);
  report(5, "ssync escape (no rendezvous, no NoEscape)", ok, note);
}

TEST_CASE("criterion 6: model-faithfulness") {
  // Equivariance, exhaustively, on 4x5 (4 symmetries) and 4x4 (8 symmetries).
  InvariantReport e45 = equivariance_suite(build_grid(4, 5, {0, 0}));
  InvariantReport e44 = equivariance_suite(build_grid(4, 4, {0, 0}));
  INFO("4x5\n" << e45.summary() << "4x4\n" << e44.summary());
  CHECK(e45.all_passed());
  CHECK(e44.all_passed());
  bool ok = e45.all_passed() && e44.all_passed();

  // Replay determinism on 100 seeded traces, byte-exact.
  bool replay_ok = true;
  for (int i = 0; i < 100; ++i) {
    int m = 4 + i % 3, n = 4 + (i / 3) % 3, t_f = 1 + i % 3;
    SimParams p = base_params(m, n, t_f, {1 + i % (n - 1), m - 1});
    p.seed = 7777 + i;
    StayMaxRandomStrategy s1(p.seed), s2(p.seed);
    std::string a = trace_to_string(run_episode(p, s1));
    std::string b = trace_to_string(run_episode(p, s2));
    replay_ok = replay_ok && a == b;
  }
  CHECK(replay_ok);
  ok = ok && replay_ok;

  // The three canonical resolution examples.
  GridSpec g = build_grid(5, 5, {0, 0});
  Configuration c;
  c.grid = g;
  c.t_f = 1;
  c.r1 = {RobotStatus::Active, {1, 0}};
  c.r2 = {RobotStatus::Active, {0, 3}};
  c.res = {{2, 0}, 0, false};
  StepResult carry = apply_round(c, Move::step({2, 0}), Move::stay(), Move::step({1, 0}));
  bool carry_ok = carry.next.r1.terminated() && carry.next.r1.pos == Vertex{2, 0} &&
                  carry.next.res.pos == Vertex{2, 0} && carry.next.res.fixed;
  CHECK(carry_ok);

  StepResult onto = apply_round(c, Move::step({2, 0}), Move::stay(), Move::stay());
  bool onto_ok = onto.next.r1.terminated() && onto.next.res.fixed &&
                 onto.next.res.pos == Vertex{2, 0};
  CHECK(onto_ok);

  Configuration e;
  e.grid = g;
  e.t_f = 1;
  e.r1 = {RobotStatus::Active, {3, 4}};
  e.r2 = {RobotStatus::Active, {4, 3}};
  e.res = {{4, 4}, 0, false};
  StepResult both = apply_round(e, Move::step({4, 4}), Move::step({4, 4}), Move::stay());
  bool both_ok = both.next.done() && !both.violation;
  CHECK(both_ok);

  ok = ok && carry_ok && onto_ok && both_ok;
  report(6, "model-faithfulness (equivariance, determinism, resolution rules)", ok);
}

TEST_CASE("criterion 7: witness replay") {
  const OracleSweep& sweep = oracle_sweep();
  bool ok = true;
  for (const auto& r : sweep.results) {
    if (r.non_terminating) {
      ok = false;
      continue;
    }
    SimParams p = base_params(r.m, r.n, r.t_f, r.witness.g0, r.worst_rounds + 5);
    p.entry_seq = r.witness.entry_seq;
    ScriptedStrategy script(r.witness.res_moves);
    Trace t = run_episode(p, script);
    INFO(r.m << "x" << r.n << " tf=" << r.t_f << " want=" << r.worst_rounds
             << " got=" << t.rounds);
    CHECK(t.outcome == Outcome::Rendezvous);
    CHECK(t.rounds == r.worst_rounds);
    ok = ok && t.outcome == Outcome::Rendezvous && t.rounds == r.worst_rounds;
  }
  report(7, "witness replay (exact round counts)", ok, "27 witnesses");
}
