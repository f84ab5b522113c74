#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

#include "scar/cr_solver.hpp"
#include "scar/payoffs.hpp"
#include "scar/profile.hpp"
#include "scar/simulate.hpp"
#include "scar/state_space.hpp"

namespace scar {

/// Robber mode: 0 while every cop has stayed put, k once cop k was the first
/// cop to change vertex.
inline constexpr int kWaiting = 0;

/// Cops keep together; the robber waits until some cop moves and then evades
/// that cop alone.
///
/// Cop n != 1 stays on cop 1's vertex or steps along a shortest path toward
/// it. Cop 1 stays when every cop shares its vertex, else steps toward the
/// lowest-indexed cop elsewhere. The robber stays while waiting; after cop k
/// moves first, it plays the canonical one-cop CR-optimal evasion from cop k.
/// Holds a pointer to `space`, which must outlive the profile.
class NoncapturingProfile {
 public:
  NoncapturingProfile(const StateSpace& space, StateIndex s0);

  StateIndex s0() const { return s0_; }
  const PositionalProfile& cop_moves() const { return cops_; }

  Vertex action(StateIndex s, int mode) const;
  int next_mode(StateIndex s, int mover, Vertex a, int mode) const;

 private:
  const StateSpace* space_;
  StateIndex s0_;
  PositionalProfile cops_;
  std::shared_ptr<const DuelTable> duel_;
};

/// Merge moves for every cop state (robber states hold "stay").
PositionalProfile merge_profile(const StateSpace& space);

Trace run(const StateSpace& space, const NoncapturingProfile& profile,
          std::size_t turn_cap = kDefaultTurnCap);

struct NoncapturingVerification {
  /// gain[n-1]: best unilateral improvement of player n from s0.
  std::vector<double> gain;
  std::vector<double> payoffs;
  double tol = 1e-8;
  bool is_ne = false;
};

/// Exact best responses from s0: for a cop, a breadth-first search of the
/// product of states and robber modes (the cop's value is the best γ^d·q over
/// reachable capture states); for the robber, value iteration against the
/// positional merge moves.
NoncapturingVerification verify_noncapturing_ne(const StateSpace& space, const GameParams& params,
                                                const NoncapturingProfile& profile,
                                                const VerifyOptions& options = {});

struct NoncapturingNe {
  NoncapturingProfile profile;
  Trace trace;
  NoncapturingVerification verification;
};

/// s0 must have every cop on one vertex x, cop 1 to move, and the robber on a
/// vertex y from which it escapes a lone cop starting at x. Without s0 the
/// first such state in index order is used. Returns nullopt when no such
/// state exists (a lone cop catches the robber from everywhere). Throws
/// PreconditionError for a supplied s0 of the wrong form.
std::optional<NoncapturingNe> build_noncapturing_ne(const StateSpace& space,
                                                    const GameParams& params,
                                                    std::optional<StateIndex> s0 = std::nullopt,
                                                    const VerifyOptions& options = {});

/// Evidence that every NE from s0 is non-capturing: s0 has infinite CR
/// capture time, and every state reachable from s0 when the robber plays its
/// canonical CR-optimal evasion and the cops move arbitrarily is a
/// non-capture state of infinite capture time. The robber can therefore
/// secure payoff 0 against any cop strategies.
struct EscapeCertificate {
  StateIndex s0 = 0;
  std::size_t closure_states = 0;
  bool closed = false;
};

/// First certified cop-1-to-move state in index order, or nullopt when the
/// N-1 cops capture from everywhere.
std::optional<EscapeCertificate> certify_robber_escape(const StateSpace& space,
                                                       const CRResult& cr);
EscapeCertificate certify_robber_escape_from(const StateSpace& space, const CRResult& cr,
                                             StateIndex s0);

}  // namespace scar
