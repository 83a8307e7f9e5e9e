#include <functional>

#include <catch2/catch_amalgamated.hpp>

#include "dynrv/trace_io.hpp"
#include "dynrv/verifier.hpp"

#include "negative_traces.hpp"

using namespace dynrv;

namespace {

SimParams params(int m, int n, int t_f, Vertex g0, int max_rounds = 0,
                 std::uint64_t seed = 0) {
  SimParams p;
  p.grid = build_grid(m, n, {0, 0});
  p.t_f = t_f;
  p.g0 = g0;
  p.max_rounds = max_rounds > 0 ? max_rounds : default_max_rounds(m, n, t_f);
  p.seed = seed;
  return p;
}

Trace greedy_trace(int m, int n, int t_f, Vertex g0) {
  SimParams p = params(m, n, t_f, g0);
  GreedyEvadeStrategy s;
  return run_episode(p, s);
}

}  // namespace

TEST_CASE("monitors pass on greedy episodes") {
  for (auto [m, n] : {std::pair{4, 4}, std::pair{5, 5}, std::pair{4, 6}}) {
    for (int t_f = 1; t_f <= 2; ++t_f) {
      Trace t = greedy_trace(m, n, t_f, {n - 1, 1});
      InvariantReport rep = check_invariants(t);
      INFO(m << "x" << n << " tf=" << t_f << "\n" << rep.summary());
      CHECK(rep.all_passed());
    }
  }
}

TEST_CASE("each seeded negative trace is rejected by its monitor") {
  for (const auto& nc : dynrv::testing::negative_traces()) {
    InvariantReport rep = check_invariants(nc.trace);
    const MonitorResult* m = rep.find(nc.monitor);
    INFO(nc.monitor << "\n" << rep.summary());
    REQUIRE(m);
    CHECK(!m->passed);
  }
}

TEST_CASE("oracle: exhaustive termination on the smallest grid") {
  WorstCaseResult r = worst_case_rounds(3, 3, 1, true);
  CHECK(!r.non_terminating);
  CHECK(r.worst_rounds > 0);
  CHECK(r.states_explored > 0);
}

TEST_CASE("oracle: witness replays to the exact round count") {
  for (bool branch : {false, true}) {
    WorstCaseResult r = worst_case_rounds(3, 4, 1, branch);
    REQUIRE(!r.non_terminating);
    SimParams p = params(3, 4, 1, r.witness.g0, r.worst_rounds + 5);
    p.entry_seq = r.witness.entry_seq;
    ScriptedStrategy script(r.witness.res_moves);
    Trace t = run_episode(p, script);
    CHECK(t.outcome == Outcome::Rendezvous);
    CHECK(t.rounds == r.worst_rounds);
  }
}

TEST_CASE("oracle: worst rounds grow with T_f and beat the oscillator bound") {
  for (auto [m, n] : {std::pair{3, 3}, std::pair{3, 4}, std::pair{4, 4}, std::pair{4, 5}}) {
    int prev = 0;
    for (int t_f = 1; t_f <= 3; ++t_f) {
      WorstCaseResult r = worst_case_rounds(m, n, t_f, true);
      REQUIRE(!r.non_terminating);
      INFO(m << "x" << n << " tf=" << t_f);
      CHECK(r.worst_rounds >= prev);  // larger T_f only adds adversary options
      prev = r.worst_rounds;
      if (t_f == 1) CHECK(r.worst_rounds >= m + n - 1);
    }
  }
}

TEST_CASE("oracle successors match the engine transition") {
  SimParams p = params(4, 4, 2, {2, 2});
  GreedyEvadeStrategy greedy;
  Trace t = run_episode(p, greedy);
  // Sample a few mid-run configurations and compare each oracle successor
  // against a one-shot scripted engine step.
  for (std::size_t i = 0; i + 1 < t.records.size() && i < 6; ++i) {
    Configuration staged = t.records[i].cfg;
    if (classify_phase(staged) == Phase::Done) break;
    auto succs = detail::oracle_successors(staged, false);
    auto legal = staged.res.fixed ? std::vector<ResourceMove>{Move::stay()}
                                  : legal_resource_moves(staged);
    REQUIRE(succs.size() == legal.size());
    for (std::size_t k = 0; k < legal.size(); ++k) {
      ScriptedStrategy one({legal[k]});
      StepResult sr = detail::step_from_staged(staged, one, nullptr);
      CHECK(detail::oracle_key(sr.next) == detail::oracle_key(succs[k].next));
    }
  }
}

TEST_CASE("bound report flags crafted exceedances") {
  WorstCaseResult ok;
  ok.m = 4;
  ok.n = 4;
  ok.t_f = 1;
  ok.worst_rounds = 30;
  ok.states_explored = 100;
  BoundReport rep1 = bound_report({ok});
  CHECK(!rep1.any_exceeding);
  CHECK(rep1.csv.find("4,4,1,30") != std::string::npos);

  WorstCaseResult bad = ok;
  bad.worst_rounds = 5000;
  BoundReport rep2 = bound_report({bad});
  CHECK(rep2.any_exceeding);
}

TEST_CASE("equivariance suite passes for the real policy") {
  for (auto [m, n] : {std::pair{3, 3}, std::pair{5, 5}}) {
    InvariantReport rep = equivariance_suite(build_grid(m, n, {0, 0}));
    INFO(m << "x" << n << "\n" << rep.summary());
    CHECK(rep.all_passed());
  }
}

TEST_CASE("equivariance suite rejects an orientation-biased stub") {
  PolicyFn biased = [](const RobotView& v) {
    Vertex east{v.self.x + 1, v.self.y};
    if (in_grid(v.rows, v.cols, east)) return Move::step(east);
    return Move::stay();
  };
  InvariantReport rep = equivariance_suite(build_grid(3, 3, {0, 0}), biased);
  CHECK(!rep.all_passed());
}
