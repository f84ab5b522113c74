#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "scar/profile.hpp"
#include "scar/state_space.hpp"

namespace scar {

struct SolveOptions {
  /// Sup-norm residual accepted once the contraction bound has been reached.
  double tol = 1e-10;
  /// 0 selects max(contraction bound, |S| + 2).
  std::size_t max_sweeps = 0;
};

/// How a token's moves are chosen in a single-valuation game.
enum class Role { Maximize, Minimize, Follow };

/// A two-sided (or one-sided) discounted game over the SCAR state graph with
/// a single valuation: v(s) = r(s) on S_C, v(τ) = 0, and on S_NC
/// v(s) = γ · opt_a v(T(s,a)) where opt is chosen by the mover's role.
struct SingleValueGame {
  double gamma = 0.9;
  /// Reward at capture states.
  std::function<double(StateIndex)> capture_reward;
  /// Role per player, indexed 1..N (index 0 unused).
  std::vector<Role> roles;
  /// Moves for Role::Follow players.
  const PositionalProfile* followed = nullptr;
};

struct ValueIterationResult {
  std::vector<double> values;
  /// Greedy strategy for every mover: first optimal action in ascending
  /// vertex order. Follow-role states copy the followed profile.
  PositionalProfile strategy;
  std::size_t sweeps = 0;
  double residual = 0.0;
};

/// Synchronous value iteration from v ≡ 0.
///
/// Stops as soon as a sweep changes nothing (the finite deterministic game
/// always reaches an exact fixed point within |S| + 1 sweeps), or when the
/// residual is within `tol` after the contraction bound ⌈log(tol(1-γ))/log γ⌉.
ValueIterationResult solve_single_value_game(const StateSpace& space, const SingleValueGame& game,
                                             const SolveOptions& options = {});

/// ⌈log(tol·(1-γ))/log γ⌉ + margin.
std::size_t contraction_sweep_bound(double gamma, double tol);

/// Index of the first action in `values` within relative 1e-12 of the best.
std::size_t first_best(const std::vector<double>& values, bool maximize);

}  // namespace scar
