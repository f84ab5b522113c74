#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "scar/payoffs.hpp"
#include "scar/profile.hpp"
#include "scar/state_space.hpp"
#include "scar/zero_sum.hpp"

namespace scar {

/// Solution of the auxiliary zero-sum game Γⁿ, in which player n maximises
/// his own discounted payoff and a coalition of all other tokens minimises it.
struct AuxSolution {
  int player = 0;
  /// v_Γⁿ(s).
  std::vector<double> values;
  /// strategy[s] is φ_n^{p}(s) for the mover p of s: φ_n^n at player n's
  /// states, the coalition's minimising move elsewhere.
  PositionalProfile strategy;
  std::size_t sweeps = 0;
  double residual = 0.0;
};

AuxSolution solve_aux_game(const StateSpace& space, const GameParams& params, int n,
                           const SolveOptions& options = {});

/// Γ¹,…,Γᴺ in player order.
std::vector<AuxSolution> solve_aux_games(const StateSpace& space, const GameParams& params,
                                         const SolveOptions& options = {});

/// Best-response check of a positional profile.
struct PositionalVerification {
  /// Exact payoffs of the profile from every state.
  ValueVector values;
  /// gap[n-1] = max over states of (best response value - profile value).
  std::vector<double> gap;
  /// Largest gap over players at each state: the profile is an NE of the
  /// game started there iff state_gap[s] <= tol.
  std::vector<double> state_gap;
  /// A state and player attaining the largest gap.
  StateIndex worst_state = 0;
  int worst_player = 0;
  double tol = 1e-8;
  bool is_ne = false;

  double max_gap() const;
  bool is_ne_from(StateIndex s0) const { return state_gap[s0] <= tol; }
};

struct VerifyOptions {
  /// Accepted best-response improvement.
  double gap_tol = 1e-8;
  /// Value-iteration settings for the best-response MDPs.
  SolveOptions solve;
};

/// For each player n, freezes the others' moves, solves n's MDP, and compares
/// against the exact profile payoffs.
PositionalVerification verify_positional_ne(const StateSpace& space, const GameParams& params,
                                            const PositionalProfile& profile,
                                            const VerifyOptions& options = {});

enum class NashStatus { Converged, NonConvergence, NotAnEquilibrium };

std::string to_string(NashStatus status);

struct NashSolveOptions {
  /// Value residual for convergence and for the equation-system check.
  double tol = 1e-10;
  double gap_tol = 1e-8;
  /// 0 selects 10 times the zero-sum sweep cap.
  std::size_t max_sweeps = 0;
  /// Consecutive sweeps without a profile change required for convergence.
  int stable_sweeps = 3;
};

struct NashReport {
  NashStatus status = NashStatus::NonConvergence;
  std::size_t sweeps = 0;
  double value_residual = 0.0;
  /// Max over states and players of the residual of the fixed-point system:
  /// the value equations u^m(s) = q^m(s) + γ u^m(T(s,σ(s))) and the argmax
  /// condition for the mover. Evaluated on the exact profile payoffs.
  double equation_residual = 0.0;
  /// Set when the profile sequence was found to repeat with period >= 2.
  std::optional<std::size_t> cycle_start;
  std::optional<std::size_t> cycle_length;
  std::optional<PositionalVerification> verification;
};

struct PositionalNe {
  PositionalProfile profile;
  /// Exact payoffs of `profile` (meaningful only when converged).
  ValueVector values;
  NashReport report;
};

/// Synchronous sweeps of σ(s) = argmax_a u^p(T(s,a)), u^m(s) = γ u^m(T(s,σ(s)))
/// from u ≡ 0, with first-maximiser tie-breaking. The result is never called
/// an equilibrium unless the exact verifier agrees.
PositionalNe solve_positional_ne(const StateSpace& space, const GameParams& params,
                                 const NashSolveOptions& options = {});

/// Max over S_NC of the fixed-point system residual for a profile and values.
double equation_residual(const StateSpace& space, const GameParams& params,
                         const PositionalProfile& profile, const ValueVector& values);

/// verify_positional_ne applied to the canonical CR-optimal profile.
/// Throws PreconditionError when the cops cannot capture from every state.
PositionalVerification check_cr_optimal_ne(const StateSpace& space, const GameParams& params,
                                           const VerifyOptions& options = {});

}  // namespace scar
