#pragma once

#include <bit>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "scar/state_space.hpp"

namespace scar {

enum class EpsilonMode {
  /// Capturing cops split 1-ε, non-capturing cops split ε.
  Fixed,
  /// Every cop receives 1/(N-1) at any capture, i.e. ε = (N-1-N₁)/(N-1).
  SplitEquivalent,
};

struct GameParams {
  int players = 3;
  double gamma = 0.9;
  EpsilonMode mode = EpsilonMode::Fixed;
  double epsilon = 0.25;
  /// Accept ε ∈ [0,1] instead of [0, 1/(N-1)].
  bool allow_extended_epsilon = false;
};

/// Informational flags of a valid parameter set.
struct ParamsCheck {
  /// γ < ε/(1-ε). Only meaningful in Fixed mode; false otherwise.
  bool in_omega_tilde = false;
};

/// Throws ValidationError naming the violated constraint.
ParamsCheck validate_params(const GameParams& params);

/// Strict γ < ε/(1-ε), evaluated as γ(1-ε) < ε so that ε = 1 is handled.
inline bool in_omega_tilde(double gamma, double epsilon) {
  return gamma * (1.0 - epsilon) < epsilon;
}

/// Reward of player n at a capture by `capturing` (nonempty); the robber pays 1.
/// Generic over the number type so the exact path shares the formula.
template <typename Number>
Number capture_share(int players, EpsilonMode mode, const Number& epsilon, CopSet capturing,
                     int n) {
  if (n == players) return Number(-1);
  const int cops = players - 1;
  const int n_capturing = std::popcount(capturing);
  if (mode == EpsilonMode::SplitEquivalent || n_capturing == cops) return Number(1) / cops;
  const bool captures = (capturing >> (n - 1)) & 1U;
  if (captures) return (Number(1) - epsilon) / n_capturing;
  return epsilon / (cops - n_capturing);
}

inline double capture_share(const GameParams& p, CopSet capturing, int n) {
  return capture_share<double>(p.players, p.mode, p.epsilon, capturing, n);
}

/// q^n(s): the capture share at capture states, 0 elsewhere (including τ).
double turn_payoff(const StateSpace& space, const GameParams& params, StateIndex s, int n);

/// Q^n of a play: γ^T·share when captured at turn T by `capturing`, 0 if never.
double discounted_payoff(const GameParams& params, std::optional<std::size_t> capture_time,
                         CopSet capturing, int n);

// Exact arithmetic for cross-checking strict inequalities and equalities.

using Rational = boost::multiprecision::cpp_rational;

/// "0.9" -> 9/10, "1/3" -> 1/3, "2" -> 2.
Rational parse_rational(std::string_view text);

struct ExactParams {
  int players = 3;
  Rational gamma{9, 10};
  EpsilonMode mode = EpsilonMode::Fixed;
  Rational epsilon{1, 4};
};

Rational discounted_payoff_exact(const ExactParams& params,
                                 std::optional<std::size_t> capture_time, CopSet capturing,
                                 int n);

}  // namespace scar
