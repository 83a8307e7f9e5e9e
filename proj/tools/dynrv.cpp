// Command-line surface: run single episodes, parameter sweeps, the
// exhaustive worst-case oracle, the semi-synchronous escape demo, the
// verification suites and trace rendering.
//
// Exit codes: 0 success/rendezvous, 1 flag or input errors, 2 max rounds
// exceeded, 3 violation or no-escape, 4 verification failure.

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dynrv/render.hpp"
#include "dynrv/trace_io.hpp"
#include "dynrv/verifier.hpp"

using namespace dynrv;

namespace {

Vertex parse_vertex(const std::string& s) {
  auto comma = s.find(',');
  if (comma == std::string::npos)
    throw CLI::ValidationError("expected a vertex as x,y: " + s);
  try {
    return {std::stoi(s.substr(0, comma)), std::stoi(s.substr(comma + 1))};
  } catch (const std::exception&) {
    throw CLI::ValidationError("expected a vertex as x,y: " + s);
  }
}

std::pair<int, int> parse_range(const std::string& s) {
  auto dots = s.find("..");
  try {
    if (dots == std::string::npos) {
      int v = std::stoi(s);
      return {v, v};
    }
    return {std::stoi(s.substr(0, dots)), std::stoi(s.substr(dots + 2))};
  } catch (const std::exception&) {
    throw CLI::ValidationError("expected N or A..B: " + s);
  }
}

GridSpec make_grid(int m, int n, const std::string& door_flag) {
  Vertex door = door_flag.empty() ? Vertex{0, 0} : parse_vertex(door_flag);
  return build_grid(m, n, door);
}

std::unique_ptr<ResourceStrategy> build_strategy(const std::string& name, const GridSpec& g,
                                                 int t_f, std::uint64_t seed,
                                                 const std::string& script_path) {
  if (name == "greedy") return std::make_unique<GreedyEvadeStrategy>();
  if (name == "stayrand") return std::make_unique<StayMaxRandomStrategy>(seed);
  if (name == "oscillator") return std::make_unique<OscillatorStrategy>(g, t_f);
  if (name == "scripted") {
    if (script_path.empty()) throw CLI::ValidationError("scripted adversary needs --script");
    return std::make_unique<ScriptedStrategy>(ScriptedStrategy::parse_file(script_path));
  }
  throw CLI::ValidationError("unknown adversary '" + name + "'");
}

void maybe_write_trace(const Trace& t, const std::string& path) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) throw Error(Errc::InvalidParams, "cannot open trace file " + path);
  write_trace(t, out);
}

struct PhaseLengths {
  int entry = 0, boundary = 0, gather = 0;
};

PhaseLengths phase_lengths(const Trace& t) {
  PhaseLengths pl;
  for (std::size_t i = 0; i + 1 < t.records.size(); ++i) {
    switch (t.records[i].phase) {
      case Phase::Entry: ++pl.entry; break;
      case Phase::Boundary: ++pl.boundary; break;
      case Phase::Gather: ++pl.gather; break;
      case Phase::Done: break;
    }
  }
  return pl;
}

int outcome_exit_code(Outcome o) {
  switch (o) {
    case Outcome::Rendezvous: return 0;
    case Outcome::MaxRoundsExceeded: return 2;
    case Outcome::Violation: return 3;
    case Outcome::NoEscape: return 3;
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"two-robot rendezvous on a dynamic point: simulator and verifier"};
  app.require_subcommand(1);

  // ---- run -----------------------------------------------------------------
  auto* run = app.add_subcommand("run", "run one episode");
  int run_m = 0, run_n = 0, run_tf = 1, run_max_rounds = 0;
  std::uint64_t run_seed = 0;
  std::string run_g0, run_adversary = "greedy", run_trace, run_door, run_script, run_entry;
  run->add_option("--m", run_m, "rows")->required();
  run->add_option("--n", run_n, "columns")->required();
  run->add_option("--tf", run_tf, "max consecutive stays of the free resource")->required();
  run->add_option("--g0", run_g0, "initial resource vertex x,y");
  run->add_option("--adversary", run_adversary,
                  "greedy | stayrand | oscillator | scripted | minimax-witness");
  run->add_option("--seed", run_seed, "adversary random seed");
  run->add_option("--max-rounds", run_max_rounds, "round budget (default 10(tf+1)(m+n))");
  run->add_option("--trace", run_trace, "write the JSONL trace here");
  run->add_option("--door", run_door, "door corner x,y (default 0,0)");
  run->add_option("--script", run_script, "move list for the scripted adversary");
  run->add_option("--entry-seq", run_entry, "entry free-choice overrides (chars x,y,s)");

  // ---- sweep ---------------------------------------------------------------
  auto* sweep = app.add_subcommand("sweep", "run an episode grid and emit CSV");
  std::string sw_m = "3..5", sw_n = "3..5", sw_tf = "1..2", sw_out;
  std::vector<std::string> sw_adversaries{"greedy"};
  int sw_episodes = 100;
  std::uint64_t sw_seed_base = 1;
  sweep->add_option("--m", sw_m, "rows range A..B");
  sweep->add_option("--n", sw_n, "columns range A..B");
  sweep->add_option("--tf", sw_tf, "tf range A..B");
  sweep->add_option("--adversaries", sw_adversaries, "adversary list")->delimiter(',');
  sweep->add_option("--episodes", sw_episodes, "episodes per cell and adversary");
  sweep->add_option("--seed-base", sw_seed_base, "first seed");
  sweep->add_option("--out", sw_out, "CSV output path")->required();

  // ---- worst ---------------------------------------------------------------
  auto* worst = app.add_subcommand("worst", "exhaustive worst-case oracle");
  std::string wo_m = "3..5", wo_n = "3..5", wo_tf = "1..3", wo_out;
  bool wo_branch = true;
  worst->add_option("--m", wo_m, "rows range");
  worst->add_option("--n", wo_n, "columns range");
  worst->add_option("--tf", wo_tf, "tf range");
  worst->add_flag("--branch-entry,!--no-branch-entry", wo_branch,
                  "also branch over the entry free choice (default on)");
  worst->add_option("--out", wo_out, "CSV output path");

  // ---- ssync-demo ----------------------------------------------------------
  auto* ssync = app.add_subcommand("ssync-demo", "escape adversary under SSYNC");
  int ss_m = 5, ss_n = 5, ss_tf = 1, ss_rounds = 5000;
  std::string ss_g0, ss_trace;
  ssync->add_option("--m", ss_m, "rows")->required();
  ssync->add_option("--n", ss_n, "columns")->required();
  ssync->add_option("--tf", ss_tf, "resource stay bound")->required();
  ssync->add_option("--rounds", ss_rounds, "rounds to survive");
  ssync->add_option("--g0", ss_g0, "initial resource vertex (default center)");
  ssync->add_option("--trace", ss_trace, "write the JSONL trace here");

  // ---- verify --------------------------------------------------------------
  auto* verify = app.add_subcommand("verify", "invariant and equivariance suites");
  std::string vf_trace;
  verify->add_option("--trace", vf_trace, "check one trace file instead of the built-ins");

  // ---- render --------------------------------------------------------------
  auto* render = app.add_subcommand("render", "draw one round of a trace");
  std::string rd_trace, rd_format = "ascii", rd_out;
  int rd_round = -1;
  bool rd_frames = false;
  render->add_option("--trace", rd_trace, "trace file")->required();
  render->add_option("--format", rd_format, "ascii | svg");
  render->add_option("--round", rd_round, "round to draw (default last)");
  render->add_flag("--frames", rd_frames, "overlay L, L' and the containing rectangle");
  render->add_option("--out", rd_out, "output path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      GridSpec g = make_grid(run_m, run_n, run_door);
      SimParams p;
      p.grid = g;
      p.t_f = run_tf;
      p.seed = run_seed;
      p.max_rounds =
          run_max_rounds > 0 ? run_max_rounds : default_max_rounds(run_m, run_n, run_tf);
      p.entry_seq = run_entry;

      std::unique_ptr<ResourceStrategy> strategy;
      std::string strategy_note;
      if (run_adversary == "minimax-witness") {
        WorstCaseResult r = worst_case_rounds(run_m, run_n, run_tf, true, &g);
        if (r.non_terminating) {
          std::cerr << "oracle found a non-terminating witness: " << r.cycle_note << "\n";
          return 4;
        }
        p.g0 = r.witness.g0;
        p.entry_seq = r.witness.entry_seq;
        p.max_rounds = std::max(p.max_rounds, r.worst_rounds + 1);
        strategy = std::make_unique<ScriptedStrategy>(r.witness.res_moves);
        strategy_note = "minimax witness (worst " + std::to_string(r.worst_rounds) + ")";
      } else {
        if (run_adversary == "oscillator") {
          OscillatorStrategy probe(g, run_tf);
          p.g0 = run_g0.empty() ? probe.p() : parse_vertex(run_g0);
          if (p.g0 != probe.p() && p.g0 != probe.q())
            throw CLI::ValidationError("oscillator runs start at " + to_string(probe.p()) +
                                       " or " + to_string(probe.q()));
        } else {
          if (run_g0.empty()) throw CLI::ValidationError("--g0 is required");
          p.g0 = parse_vertex(run_g0);
        }
        strategy = build_strategy(run_adversary, g, run_tf, run_seed, run_script);
      }
      Trace t = run_episode(p, *strategy);
      maybe_write_trace(t, run_trace);
      std::cout << outcome_name(t.outcome) << " rounds=" << t.rounds;
      if (!strategy_note.empty()) std::cout << " [" << strategy_note << "]";
      std::cout << "\n";
      return outcome_exit_code(t.outcome);
    }

    if (*sweep) {
      auto [m_lo, m_hi] = parse_range(sw_m);
      auto [n_lo, n_hi] = parse_range(sw_n);
      auto [tf_lo, tf_hi] = parse_range(sw_tf);
      std::ofstream out(sw_out);
      if (!out) {
        std::cerr << "cannot open " << sw_out << "\n";
        return 1;
      }
      out << "m,n,tf,adversary,seed,outcome,rounds,entry_len,boundary_len,gather_len\n";
      long total = 0, met = 0;
      std::uint64_t seed = sw_seed_base;
      for (int m = m_lo; m <= m_hi; ++m)
        for (int n = n_lo; n <= n_hi; ++n)
          for (int tf = tf_lo; tf <= tf_hi; ++tf) {
            GridSpec g = build_grid(m, n, {0, 0});
            std::vector<Vertex> g0s;
            for (int y = 0; y < m; ++y)
              for (int x = 0; x < n; ++x)
                if (Vertex{x, y} != g.door) g0s.push_back({x, y});
            for (const auto& name : sw_adversaries)
              for (int i = 0; i < sw_episodes; ++i, ++seed) {
                SimParams p;
                p.grid = g;
                p.t_f = tf;
                p.g0 = g0s[i % g0s.size()];
                p.seed = seed;
                p.max_rounds = default_max_rounds(m, n, tf);
                auto strategy = build_strategy(name, g, tf, seed, "");
                if (name == "oscillator") p.g0 = OscillatorStrategy(g, tf).p();
                Trace t = run_episode(p, *strategy);
                PhaseLengths pl = phase_lengths(t);
                out << m << ',' << n << ',' << tf << ',' << name << ',' << seed << ','
                    << outcome_name(t.outcome) << ',' << t.rounds << ',' << pl.entry << ','
                    << pl.boundary << ',' << pl.gather << '\n';
                ++total;
                met += t.outcome == Outcome::Rendezvous;
              }
          }
      std::cout << "episodes=" << total << " rendezvous=" << met << " ("
                << (total ? 100.0 * met / total : 0.0) << "%)\n";
      return 0;
    }

    if (*worst) {
      auto [m_lo, m_hi] = parse_range(wo_m);
      auto [n_lo, n_hi] = parse_range(wo_n);
      auto [tf_lo, tf_hi] = parse_range(wo_tf);
      std::vector<WorstCaseResult> results;
      for (int m = m_lo; m <= m_hi; ++m)
        for (int n = n_lo; n <= n_hi; ++n)
          for (int tf = tf_lo; tf <= tf_hi; ++tf)
            results.push_back(worst_case_rounds(m, n, tf, wo_branch));
      BoundReport rep = bound_report(results);
      std::cout << rep.table;
      if (!wo_out.empty()) {
        std::ofstream out(wo_out);
        if (!out) {
          std::cerr << "cannot open " << wo_out << "\n";
          return 1;
        }
        out << rep.csv;
      }
      if (rep.any_non_terminating) {
        std::cout << "NON-TERMINATING cells found\n";
        return 4;
      }
      if (rep.any_exceeding) std::cout << "note: envelope exceedances flagged above\n";
      return 0;
    }

    if (*ssync) {
      GridSpec g = build_grid(ss_m, ss_n, {0, 0});
      SimParams p;
      p.grid = g;
      p.t_f = ss_tf;
      p.g0 = ss_g0.empty() ? Vertex{ss_n / 2, ss_m / 2} : parse_vertex(ss_g0);
      p.max_rounds = ss_rounds;
      EscapeAdversary esc;
      Trace t = ssync_run(p, esc);
      maybe_write_trace(t, ss_trace);
      switch (t.outcome) {
        case Outcome::MaxRoundsExceeded:
          std::cout << "no rendezvous after " << t.rounds << " rounds\n";
          return 0;
        case Outcome::Rendezvous:
          std::cout << "rendezvous at round " << t.rounds << " (escape construction failed)\n";
          return 2;
        default:
          std::cout << outcome_name(t.outcome) << " at round " << t.rounds << "\n";
          return 3;
      }
    }

    if (*verify) {
      if (!vf_trace.empty()) {
        std::ifstream in(vf_trace);
        if (!in) {
          std::cerr << "cannot open " << vf_trace << "\n";
          return 1;
        }
        Trace t = read_trace(in);
        InvariantReport rep = check_invariants(t);
        std::cout << rep.summary();
        return rep.all_passed() ? 0 : 4;
      }
      bool ok = true;
      for (auto [m, n] : {std::pair{4, 5}, std::pair{4, 4}}) {
        InvariantReport rep = equivariance_suite(build_grid(m, n, {0, 0}));
        std::cout << "equivariance " << m << "x" << n << ":\n" << rep.summary();
        ok = ok && rep.all_passed();
      }
      for (int m = 3; m <= 5 && ok; ++m)
        for (int n = 3; n <= 5; ++n)
          for (int tf = 1; tf <= 2; ++tf)
            for (int i = 0; i < 25; ++i) {
              SimParams p;
              p.grid = build_grid(m, n, {0, 0});
              p.t_f = tf;
              p.g0 = {1 + i % (n - 1), m - 1};
              p.seed = 31 * i + 7;
              p.max_rounds = default_max_rounds(m, n, tf);
              StayMaxRandomStrategy s(p.seed);
              Trace t = run_episode(p, s);
              InvariantReport rep = check_invariants(t);
              if (!rep.all_passed() || t.outcome != Outcome::Rendezvous) {
                std::cout << "episode " << m << "x" << n << " tf=" << tf << " i=" << i
                          << " failed:\n"
                          << rep.summary();
                ok = false;
              }
            }
      std::cout << (ok ? "verify: all suites passed\n" : "verify: FAILURES\n");
      return ok ? 0 : 4;
    }

    if (*render) {
      std::ifstream in(rd_trace);
      if (!in) {
        std::cerr << "cannot open " << rd_trace << "\n";
        return 1;
      }
      Trace t = read_trace(in);
      int round = rd_round < 0 ? t.records.back().round : rd_round;
      if (round < 0 || round >= static_cast<int>(t.records.size())) {
        std::cerr << "round " << round << " out of range\n";
        return 1;
      }
      RenderOptions opt{rd_frames};
      std::string img = rd_format == "svg" ? render_svg(t.records[round], opt)
                                           : render_ascii(t.records[round], opt);
      if (rd_out.empty()) {
        std::cout << img;
      } else {
        std::ofstream out(rd_out);
        if (!out) {
          std::cerr << "cannot open " << rd_out << "\n";
          return 1;
        }
        out << img;
      }
      return 0;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << errc_name(e.code()) << ": " << e.what() << "\n";
    return 1;
  }
  return 1;
}
