#pragma once

#include <optional>
#include <string>
#include <vector>

#include "scar/equilibria.hpp"
#include "scar/profile.hpp"
#include "scar/state_space.hpp"

namespace scar {

/// Mode of a threat automaton: 0 is Cooperative, m in 1..N is Punishing(m).
using ThreatMode = int;
inline constexpr ThreatMode kCooperative = 0;

/// Grim-trigger profile over positional parts.
///
/// In Cooperative mode every player follows `cooperative`. The first time the
/// mover m plays a move different from the cooperative one, every player
/// switches for good to `punishing[m-1]`, the profile (φ_m^1,…,φ_m^N) of the
/// auxiliary game Γᵐ.
struct ThreatProfile {
  PositionalProfile cooperative;
  std::vector<PositionalProfile> punishing;
  /// "threat" or "capturing-threat".
  std::string kind = "threat";

  int players() const { return static_cast<int>(punishing.size()); }

  Vertex action(StateIndex s, ThreatMode mode) const {
    return mode == kCooperative ? cooperative[s] : punishing[mode - 1][s];
  }

  /// Mode after `mover` plays `a` at s. Deviation is judged on the observed
  /// move only, so replaying the prescribed move never triggers punishment.
  ThreatMode next_mode(StateIndex s, int mover, Vertex a, ThreatMode mode) const {
    if (mode != kCooperative || a == cooperative[s]) return mode;
    return mover;
  }
};

/// Cooperative parts (φ_1^1,…,φ_N^N), punishments from every Γᵐ.
ThreatProfile build_threat_profile(const StateSpace& space, const std::vector<AuxSolution>& aux);
ThreatProfile build_threat_profile(const StateSpace& space, const GameParams& params,
                                   const SolveOptions& options = {});

/// Cooperative parts replaced by the canonical CR-optimal profile; punishments
/// as in build_threat_profile. Throws PreconditionError when N-1 cops cannot
/// capture from every state.
ThreatProfile build_capturing_threat_ne(const StateSpace& space,
                                        const std::vector<AuxSolution>& aux);
ThreatProfile build_capturing_threat_ne(const StateSpace& space, const GameParams& params,
                                        const SolveOptions& options = {});

struct ThreatVerification {
  /// Exact payoffs of the cooperative play from every state.
  ValueVector cooperative_values;
  /// gain[n-1] = max over starting states of player n's best deviation gain.
  std::vector<double> gain;
  /// Largest gain over players per starting state.
  std::vector<double> state_gain;
  StateIndex worst_state = 0;
  int worst_player = 0;
  double tol = 1e-8;
  bool is_ne = false;

  double max_gain() const;
  bool is_ne_from(StateIndex s0) const { return state_gain[s0] <= tol; }
};

/// For each player n: solves n's best response against Punishing(n)
/// (the others frozen at φ_n^m), then along every cooperative path compares
/// the cooperative continuation with the best one-shot deviation followed by
/// that best response. Reports the discounted maximum gain per start.
ThreatVerification verify_threat_ne(const StateSpace& space, const GameParams& params,
                                    const ThreatProfile& threat, const VerifyOptions& options = {});

}  // namespace scar
