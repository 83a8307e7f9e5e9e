#pragma once

// Resource-side adversaries: legal-move generation, the evasion strategies
// used for randomized episodes, the lower-bound oscillator and the
// semi-synchronous escape adversary. Strategies are consulted only while the
// resource is free; legality is enforced by the engine, so a buggy strategy
// fails loudly instead of corrupting a run.

#include <cstdint>
#include <fstream>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dynrv/configuration.hpp"
#include "dynrv/policy.hpp"

namespace dynrv {

using ResourceMove = Move;

// All legal moves for the resource in this configuration, in the fixed
// enumeration order (stay first, then +x, -x, +y, -y steps). Stay drops out
// once the resource has sat alone for T_f completed rounds.
inline std::vector<ResourceMove> legal_resource_moves(const Configuration& cfg) {
  if (cfg.res.fixed) return {Move::stay()};
  std::vector<ResourceMove> out;
  if (cfg.res.stay_count < cfg.t_f) out.push_back(Move::stay());
  for (Vertex u : cfg.grid.neighbors(cfg.res.pos)) out.push_back(Move::step(u));
  return out;
}

enum class StrategyKind { StayMaxRandom, GreedyEvade, Oscillator, Scripted, MinimaxWitness };

class ResourceStrategy {
 public:
  virtual ~ResourceStrategy() = default;
  virtual std::string name() const = 0;
  // Called once per round while the resource is free; must return a legal move.
  virtual ResourceMove choose(const Configuration& cfg) = 0;
};

namespace detail {

inline std::vector<Vertex> active_robot_positions(const Configuration& cfg) {
  std::vector<Vertex> out;
  if (cfg.r1.active()) out.push_back(cfg.r1.pos);
  if (cfg.r2.active()) out.push_back(cfg.r2.pos);
  return out;
}

inline int min_hop_to(const std::vector<Vertex>& pts, Vertex v) {
  int best = INT_MAX;
  for (Vertex p : pts) best = std::min(best, hop_distance(p, v));
  return best;
}

}  // namespace detail

// Maximizes the minimum hop distance to the active robots; prefers Stay on
// ties, then the fixed neighbor order.
class GreedyEvadeStrategy final : public ResourceStrategy {
 public:
  std::string name() const override { return "greedy"; }

  ResourceMove choose(const Configuration& cfg) override {
    auto robots = detail::active_robot_positions(cfg);
    auto legal = legal_resource_moves(cfg);
    ResourceMove best = legal.front();
    int best_d = INT_MIN;
    for (const auto& m : legal) {
      Vertex to = m.kind == MoveKind::Step ? m.target : cfg.res.pos;
      int d = robots.empty() ? 0 : detail::min_hop_to(robots, to);
      if (d > best_d) {
        best_d = d;
        best = m;
      }
    }
    return best;
  }
};

// Stays put until the T_f bound forbids it, then takes a uniformly random
// legal step. The raw generator is reduced modulo the candidate count so a
// seed replays identically everywhere.
class StayMaxRandomStrategy final : public ResourceStrategy {
 public:
  explicit StayMaxRandomStrategy(std::uint64_t seed) : rng_(seed) {}

  std::string name() const override { return "stayrand"; }

  ResourceMove choose(const Configuration& cfg) override {
    auto legal = legal_resource_moves(cfg);
    for (const auto& m : legal)
      if (m.kind == MoveKind::Stay) return m;
    std::size_t i = static_cast<std::size_t>(rng_()) % legal.size();
    return legal[i];
  }

 private:
  std::mt19937_64 rng_;
};

// Replays a recorded move list, one entry per round while the resource is
// free. Running past the end degrades to Stay where legal.
class ScriptedStrategy final : public ResourceStrategy {
 public:
  explicit ScriptedStrategy(std::vector<ResourceMove> moves) : moves_(std::move(moves)) {}

  std::string name() const override { return "scripted"; }

  ResourceMove choose(const Configuration& cfg) override {
    if (idx_ < moves_.size()) return moves_[idx_++];
    auto legal = legal_resource_moves(cfg);
    for (const auto& m : legal)
      if (m.kind == MoveKind::Stay) return m;
    throw Error(Errc::IllegalScript, "script exhausted with Stay illegal at round " +
                                         std::to_string(cfg.round));
  }

  static std::vector<ResourceMove> parse(std::istream& in) {
    std::vector<ResourceMove> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      std::istringstream ls(line);
      std::string word;
      if (!(ls >> word)) continue;  // blank line
      if (word == "stay") {
        out.push_back(Move::stay());
      } else if (word == "step") {
        int x, y;
        if (!(ls >> x >> y))
          throw Error(Errc::IllegalScript,
                      "bad step on script line " + std::to_string(lineno));
        out.push_back(Move::step({x, y}));
      } else {
        throw Error(Errc::IllegalScript,
                    "unknown directive '" + word + "' on script line " + std::to_string(lineno));
      }
    }
    return out;
  }

  static std::vector<ResourceMove> parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::IllegalScript, "cannot open script " + path);
    return parse(in);
  }

 private:
  std::vector<ResourceMove> moves_;
  std::size_t idx_ = 0;
};

// Lower-bound adversary: ping-pongs between the corner P diagonally opposite
// the door and its neighbor Q on the far column boundary, changing position
// every T_f rounds, and hands off to greedy evasion once a robot closes to
// hop distance one so runs still terminate.
class OscillatorStrategy final : public ResourceStrategy {
 public:
  OscillatorStrategy(const GridSpec& g, int t_f) : t_f_(t_f) {
    p_ = g.far_corner();
    q_ = {p_.x, p_.y + (g.door.y == 0 ? -1 : 1)};
  }

  std::string name() const override { return "oscillator"; }

  Vertex p() const { return p_; }
  Vertex q() const { return q_; }

  ResourceMove choose(const Configuration& cfg) override {
    if (!evading_) {
      auto robots = detail::active_robot_positions(cfg);
      if (!robots.empty() && detail::min_hop_to(robots, cfg.res.pos) <= 1) evading_ = true;
    }
    if (evading_) return greedy_.choose(cfg);
    if (cfg.res.pos != p_ && cfg.res.pos != q_) {
      // Misplaced start: walk to the oscillation pair first.
      Vertex to = cfg.res.pos;
      int dx = p_.x - to.x, dy = p_.y - to.y;
      if (std::abs(dx) >= std::abs(dy) && dx != 0) to.x += dx > 0 ? 1 : -1;
      else to.y += dy > 0 ? 1 : -1;
      return Move::step(to);
    }
    if (cfg.res.stay_count == t_f_ - 1) return Move::step(cfg.res.pos == p_ ? q_ : p_);
    return Move::stay();
  }

 private:
  int t_f_;
  Vertex p_, q_;
  bool evading_ = false;
  GreedyEvadeStrategy greedy_;
};

inline std::unique_ptr<ResourceStrategy> make_strategy(StrategyKind kind, const GridSpec& g,
                                                       int t_f, std::uint64_t seed,
                                                       std::vector<ResourceMove> script = {}) {
  switch (kind) {
    case StrategyKind::GreedyEvade: return std::make_unique<GreedyEvadeStrategy>();
    case StrategyKind::StayMaxRandom: return std::make_unique<StayMaxRandomStrategy>(seed);
    case StrategyKind::Oscillator: return std::make_unique<OscillatorStrategy>(g, t_f);
    case StrategyKind::Scripted: return std::make_unique<ScriptedStrategy>(std::move(script));
    case StrategyKind::MinimaxWitness:
      throw Error(Errc::InvalidParams,
                  "minimax witnesses are materialized by the caller as scripted strategies");
  }
  throw Error(Errc::InvalidParams, "unknown strategy");
}

// --- Semi-synchronous adversary ---------------------------------------------

struct SsyncDecision {
  bool activate_r1 = false;
  bool activate_r2 = false;
  ResourceMove res_move = Move::stay();
};

class SsyncAdversary {
 public:
  virtual ~SsyncAdversary() = default;
  virtual std::string name() const = 0;
  // Upper bound on rounds between successive activations of any on-grid robot.
  virtual int fairness_window() const = 0;
  virtual SsyncDecision decide(const Configuration& cfg) = 0;
};

// The impossibility-proof adversary. It activates exactly one robot per
// round and steers the resource so the activated robot can never reach the
// resource's destination, entering no corner while a robot sits within hop
// distance two of it. The activation choice is the adversary's own lever:
// it prefers the robot whose activation leaves the resource an escape
// (activating the adjacent robot first, as in the proof's case analysis),
// degrading to the alternation turn, and never starves a robot beyond the
// fairness window.
class EscapeAdversary final : public SsyncAdversary {
 public:
  explicit EscapeAdversary(int fairness_window = 4) : window_(fairness_window) {
    if (window_ < 2)
      throw Error(Errc::InvalidParams, "escape adversary needs a fairness window >= 2");
  }

  std::string name() const override { return "escape"; }
  int fairness_window() const override { return window_; }

  SsyncDecision decide(const Configuration& cfg) override {
    std::vector<RobotSel> order = activation_order(cfg);
    if (order.empty()) return {};  // nobody on the grid to activate

    SsyncDecision d;
    std::optional<RobotSel> chosen;
    std::optional<Move> move;
    for (RobotSel sel : order) {
      if (cfg.res.fixed) {
        chosen = sel;
        move = Move::stay();
        break;
      }
      if (auto m = escape_move(cfg, sel)) {
        chosen = sel;
        move = m;
        break;
      }
    }
    if (!chosen)
      throw Error(Errc::NoEscape, "escape policy has no safe move at round " +
                                      std::to_string(cfg.round) + " from " +
                                      to_string(cfg.res.pos));
    d.activate_r1 = *chosen == RobotSel::First;
    d.activate_r2 = *chosen == RobotSel::Second;
    d.res_move = *move;
    note_activation(cfg, *chosen);
    return d;
  }

 private:
  // Candidate activations in preference order. A robot one short of the
  // fairness bound is the only legal choice; otherwise prefer the adjacent
  // robot (as in the proof's case analysis), then the alternation turn.
  std::vector<RobotSel> activation_order(const Configuration& cfg) const {
    std::vector<RobotSel> order;
    bool r1a = cfg.r1.active(), r2a = cfg.r2.active();
    if (!r1a && !r2a) return order;
    if (r1a != r2a) {
      order.push_back(r1a ? RobotSel::First : RobotSel::Second);
      return order;
    }
    if (gap1_ >= window_ - 1) return {RobotSel::First};
    if (gap2_ >= window_ - 1) return {RobotSel::Second};
    auto push = [&](RobotSel s) {
      for (RobotSel t : order)
        if (t == s) return;
      order.push_back(s);
    };
    for (RobotSel s : {RobotSel::First, RobotSel::Second})
      if (adjacent(cfg.robot(s).pos, cfg.res.pos)) push(s);
    push(turn_);
    push(other_robot(turn_));
    return order;
  }

  void note_activation(const Configuration& cfg, RobotSel chosen) {
    bool both = cfg.r1.active() && cfg.r2.active();
    gap1_ = (chosen == RobotSel::First || !cfg.r1.active()) ? 0 : gap1_ + 1;
    gap2_ = (chosen == RobotSel::Second || !cfg.r2.active()) ? 0 : gap2_ + 1;
    if (both) turn_ = other_robot(chosen);
  }

  // A safe resource move given this activation, or nullopt if none exists.
  std::optional<ResourceMove> escape_move(const Configuration& cfg, RobotSel activated) const {
    auto robots = detail::active_robot_positions(cfg);
    bool any_adjacent = !robots.empty() && detail::min_hop_to(robots, cfg.res.pos) <= 1;
    if (!any_adjacent && cfg.res.stay_count < cfg.t_f) return Move::stay();

    // Vertices the activated robot can occupy at the end of this round.
    std::vector<Vertex> reach;
    reach.push_back(cfg.robot(activated).pos);
    for (Vertex u : cfg.grid.neighbors(cfg.robot(activated).pos)) reach.push_back(u);
    std::vector<Vertex> occupied;
    if (cfg.r1.on_grid()) occupied.push_back(cfg.r1.pos);
    if (cfg.r2.on_grid()) occupied.push_back(cfg.r2.pos);

    auto in = [](const std::vector<Vertex>& vs, Vertex v) {
      for (Vertex u : vs)
        if (u == v) return true;
      return false;
    };
    std::vector<Vertex> cands;
    for (Vertex u : cfg.grid.neighbors(cfg.res.pos)) {
      if (in(occupied, u) || in(reach, u)) continue;
      if (cfg.grid.is_corner(u) && !robots.empty() && detail::min_hop_to(robots, u) <= 2)
        continue;  // C_corner avoidance
      cands.push_back(u);
    }
    bool have_non_corner = false;
    for (Vertex u : cands) have_non_corner = have_non_corner || !cfg.grid.is_corner(u);
    if (have_non_corner)
      std::erase_if(cands, [&](Vertex u) { return cfg.grid.is_corner(u); });
    if (cands.empty()) return std::nullopt;
    Vertex best = cands.front();
    int best_d = robots.empty() ? 0 : detail::min_hop_to(robots, best);
    for (Vertex u : cands) {
      int du = robots.empty() ? 0 : detail::min_hop_to(robots, u);
      if (du > best_d) {
        best = u;
        best_d = du;
      }
    }
    return Move::step(best);
  }

  int window_;
  RobotSel turn_ = RobotSel::First;
  int gap1_ = 0, gap2_ = 0;
};

// Fixed cyclic activation pattern around a plugged resource strategy; used to
// exercise the scheduler itself (e.g. full activation reduces to FSYNC).
// Rejects patterns that leave a round with no activation or starve a robot
// beyond the fairness window.
class PatternAdversary final : public SsyncAdversary {
 public:
  PatternAdversary(std::vector<std::pair<bool, bool>> pattern, int fairness_window,
                   ResourceStrategy& res)
      : pattern_(std::move(pattern)), window_(fairness_window), res_(res) {
    if (pattern_.empty())
      throw Error(Errc::InvalidParams, "activation pattern must be non-empty");
    int gap1 = 0, gap2 = 0;
    for (int i = 0; i < 2 * static_cast<int>(pattern_.size()); ++i) {
      const auto& [a1, a2] = pattern_[i % pattern_.size()];
      if (!a1 && !a2)
        throw Error(Errc::InvalidParams, "activation pattern has an empty round");
      gap1 = a1 ? 0 : gap1 + 1;
      gap2 = a2 ? 0 : gap2 + 1;
      if (gap1 >= window_ || gap2 >= window_)
        throw Error(Errc::InvalidParams, "activation pattern starves a robot beyond K");
    }
  }

  std::string name() const override { return "pattern"; }
  int fairness_window() const override { return window_; }

  SsyncDecision decide(const Configuration& cfg) override {
    const auto& [a1, a2] = pattern_[idx_++ % pattern_.size()];
    SsyncDecision d;
    d.activate_r1 = a1;
    d.activate_r2 = a2;
    d.res_move = cfg.res.fixed ? Move::stay() : res_.choose(cfg);
    return d;
  }

 private:
  std::vector<std::pair<bool, bool>> pattern_;
  int window_;
  ResourceStrategy& res_;
  std::size_t idx_ = 0;
};

}  // namespace dynrv
