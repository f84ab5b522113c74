#pragma once

#include <cstdint>
#include <vector>

#include "scar/payoffs.hpp"
#include "scar/state_space.hpp"

namespace scar {

/// Sentinel for "never captured" / infinite capture time.
inline constexpr std::uint32_t kNever = UINT32_MAX;

/// A deterministic positional profile σ = (σ¹,…,σᴺ).
///
/// Only the mover has a choice at any state, so a single action per state
/// encodes every player's positional strategy: moves[s] is σ^{p}(s) for the
/// mover p of s. Entries at capture states and τ hold λ.
struct PositionalProfile {
  std::vector<Vertex> moves;

  Vertex operator[](StateIndex s) const { return moves[s]; }
  Vertex& operator[](StateIndex s) { return moves[s]; }
  std::size_t size() const { return moves.size(); }

  friend bool operator==(const PositionalProfile&, const PositionalProfile&) = default;
};

/// Every mover stays put.
PositionalProfile stay_profile(const StateSpace& space);

/// Throws IllegalActionError on the first move outside N[x^p].
void validate_profile(const StateSpace& space, const PositionalProfile& profile);

/// Where the play of a positional profile ends up from each state.
struct ProfileOutcome {
  /// Turns until the first capture state, kNever if the play cycles in S_NC.
  std::vector<std::uint32_t> capture_time;
  /// The capture state reached (the state itself for capture states);
  /// the terminal index when never captured.
  std::vector<StateIndex> capture_state;
};

/// Follows the functional graph s -> T(s, σ(s)) from every state. Exact: a
/// play either reaches S_C or enters a cycle inside S_NC.
ProfileOutcome evaluate_outcomes(const StateSpace& space, const PositionalProfile& profile);

/// u^m(s) = Q^m(s, σ) for every player m, player-major: values[(m-1)*|S| + s].
struct ValueVector {
  int players = 0;
  std::size_t states = 0;
  std::vector<double> data;

  ValueVector() = default;
  ValueVector(int n_players, std::size_t n_states)
      : players(n_players), states(n_states), data(static_cast<std::size_t>(n_players) * n_states) {}

  double& operator()(int player, StateIndex s) { return data[(player - 1) * states + s]; }
  double operator()(int player, StateIndex s) const { return data[(player - 1) * states + s]; }
};

/// Exact payoffs of a positional profile from every state (γ^∞ = 0).
ValueVector profile_values(const StateSpace& space, const GameParams& params,
                           const ProfileOutcome& outcome);

}  // namespace scar
