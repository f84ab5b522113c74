#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "scar/errors.hpp"
#include "scar/payoffs.hpp"
#include "scar/profile.hpp"
#include "scar/state_space.hpp"
#include "scar/threat.hpp"

namespace scar {

enum class Termination { Captured, CycleCertified, TurnCapHit };

std::string to_string(Termination t);

/// Turn t moves the game from s_{t-1} to s_t.
struct TraceStep {
  std::size_t t = 0;
  int mover = 0;
  Vertex action = kNullMove;
  StateIndex state = 0;
  /// Strategy-automaton mode after the move (0 for positional play).
  int mode = 0;

  friend bool operator==(const TraceStep&, const TraceStep&) = default;
};

struct Trace {
  StateIndex initial = 0;
  int initial_mode = 0;
  std::vector<TraceStep> steps;
  Termination termination = Termination::TurnCapHit;
  /// T_C when captured; nullopt otherwise.
  std::optional<std::size_t> capture_time;
  CopSet capturing_set = 0;
  /// For CycleCertified: the turn at which the repeated (state, mode) pair
  /// first occurred; play is periodic from there on.
  std::optional<std::size_t> cycle_start;

  /// s_0, s_1, …, s_last.
  std::vector<StateIndex> states() const;
  /// Vertex of `player` at turns 0..last.
  std::vector<Vertex> positions(const StateSpace& space, int player) const;

  friend bool operator==(const Trace&, const Trace&) = default;
};

/// Turn index -> action for the deviating player.
using DeviationPlan = std::map<std::size_t, Vertex>;

inline constexpr std::size_t kDefaultTurnCap = 10'000'000;

namespace detail {

struct PositionalAutomaton {
  const PositionalProfile& profile;
  Vertex action(StateIndex s, int) const { return profile[s]; }
  int next_mode(StateIndex, int, Vertex, int mode) const { return mode; }
};

}  // namespace detail

/// Plays a strategy automaton (action(s, mode), next_mode(s, mover, a, mode))
/// from s0. The deviator, if any, replaces its move with plan[t] on the turns
/// listed in the plan. Stops at the first capture state, at a repeated
/// (state, mode) pair once the plan is exhausted, or at the turn cap.
template <typename Automaton>
Trace run_automaton(const StateSpace& space, const Automaton& automaton, StateIndex s0,
                    int initial_mode, int deviator = 0, const DeviationPlan& plan = {},
                    std::size_t turn_cap = kDefaultTurnCap) {
  if (space.is_terminal(s0)) throw ValidationError("the initial state must not be tau");
  Trace trace;
  trace.initial = s0;
  trace.initial_mode = initial_mode;
  const std::size_t last_planned = plan.empty() ? 0 : plan.rbegin()->first;

  std::map<std::pair<StateIndex, int>, std::size_t> seen;
  StateIndex s = s0;
  int mode = initial_mode;
  for (std::size_t t = 0;; ++t) {
    if (space.is_capture(s)) {
      trace.termination = Termination::Captured;
      trace.capture_time = t;
      trace.capturing_set = space.capturing_set(s);
      return trace;
    }
    if (t >= last_planned) {
      auto [it, inserted] = seen.try_emplace({s, mode}, t);
      if (!inserted) {
        trace.termination = Termination::CycleCertified;
        trace.cycle_start = it->second;
        return trace;
      }
    }
    if (t >= turn_cap) {
      trace.termination = Termination::TurnCapHit;
      return trace;
    }
    const int mover = space.mover(s);
    Vertex a = automaton.action(s, mode);
    if (mover == deviator) {
      if (auto it = plan.find(t + 1); it != plan.end()) a = it->second;
    }
    const StateIndex next = space.transition(s, a);
    mode = automaton.next_mode(s, mover, a, mode);
    s = next;
    trace.steps.push_back({t + 1, mover, a, s, mode});
  }
}

Trace run(const StateSpace& space, const PositionalProfile& profile, StateIndex s0,
          std::size_t turn_cap = kDefaultTurnCap);

/// Threat play starting in Cooperative mode.
Trace run(const StateSpace& space, const ThreatProfile& threat, StateIndex s0,
          std::size_t turn_cap = kDefaultTurnCap);

Trace run_with_forced_deviation(const StateSpace& space, const ThreatProfile& threat, int deviator,
                                const DeviationPlan& plan, StateIndex s0,
                                std::size_t turn_cap = kDefaultTurnCap);

Trace run_with_forced_deviation(const StateSpace& space, const PositionalProfile& profile,
                                int deviator, const DeviationPlan& plan, StateIndex s0,
                                std::size_t turn_cap = kDefaultTurnCap);

/// Q^n of a finished play: γ^{T_C}·share, or 0 for a certified non-capture.
/// Throws PreconditionError for a TurnCapHit trace.
double total_payoff(const StateSpace& space, const GameParams& params, const Trace& trace, int n);
std::vector<double> payoffs_of(const StateSpace& space, const GameParams& params,
                               const Trace& trace);
std::vector<Rational> payoffs_of_exact(const StateSpace& space, const ExactParams& params,
                                       const Trace& trace);

/// {"initial", "steps": [{t, mover, action, state, mode}], "termination",
///  "capture_time", "capturing_cops", "cycle_start"}.
nlohmann::json to_json(const StateSpace& space, const Trace& trace);

/// Fixed-width turn table: a "Turn" header row, then one "C<n> vertex" row
/// per cop and an "R vertex" row, one column per turn 0..last.
std::string render_turn_table(const StateSpace& space, const Trace& trace);

}  // namespace scar
