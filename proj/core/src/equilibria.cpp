#include "scar/equilibria.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string_view>

#include "scar/cr_solver.hpp"
#include "scar/errors.hpp"

namespace scar {

namespace {

std::size_t profile_hash(const PositionalProfile& profile) {
  std::string_view bytes(reinterpret_cast<const char*>(profile.moves.data()),
                         profile.moves.size() * sizeof(Vertex));
  return std::hash<std::string_view>{}(bytes);
}

// Smallest period p >= 2 such that the last three periods of `hashes` agree.
std::optional<std::size_t> repeating_period(const std::vector<std::size_t>& hashes) {
  constexpr std::size_t kMaxPeriod = 64;
  constexpr std::size_t kRepeats = 3;
  const std::size_t k = hashes.size();
  for (std::size_t p = 2; p <= kMaxPeriod && kRepeats * p < k; ++p) {
    bool periodic = true;
    for (std::size_t i = 0; i < (kRepeats - 1) * p && periodic; ++i) {
      periodic = hashes[k - 1 - i] == hashes[k - 1 - i - p];
    }
    if (periodic) return p;
  }
  return std::nullopt;
}

}  // namespace

AuxSolution solve_aux_game(const StateSpace& space, const GameParams& params, int n,
                           const SolveOptions& options) {
  if (n < 1 || n > space.players()) throw ValidationError("player index out of range");
  SingleValueGame game;
  game.gamma = params.gamma;
  game.capture_reward = [&](StateIndex s) { return turn_payoff(space, params, s, n); };
  game.roles.assign(static_cast<std::size_t>(space.players()) + 1, Role::Minimize);
  game.roles[n] = Role::Maximize;
  auto solved = solve_single_value_game(space, game, options);
  return {n, std::move(solved.values), std::move(solved.strategy), solved.sweeps,
          solved.residual};
}

std::vector<AuxSolution> solve_aux_games(const StateSpace& space, const GameParams& params,
                                         const SolveOptions& options) {
  std::vector<AuxSolution> out;
  for (int n = 1; n <= space.players(); ++n) out.push_back(solve_aux_game(space, params, n, options));
  return out;
}

double PositionalVerification::max_gap() const {
  return gap.empty() ? 0.0 : *std::max_element(gap.begin(), gap.end());
}

PositionalVerification verify_positional_ne(const StateSpace& space, const GameParams& params,
                                            const PositionalProfile& profile,
                                            const VerifyOptions& options) {
  validate_profile(space, profile);
  PositionalVerification report;
  report.tol = options.gap_tol;
  report.values = profile_values(space, params, evaluate_outcomes(space, profile));
  report.gap.assign(static_cast<std::size_t>(space.players()), 0.0);
  report.state_gap.assign(space.size(), 0.0);

  double worst = -1.0;
  for (int n = 1; n <= space.players(); ++n) {
    SingleValueGame game;
    game.gamma = params.gamma;
    game.capture_reward = [&](StateIndex s) { return turn_payoff(space, params, s, n); };
    game.roles.assign(static_cast<std::size_t>(space.players()) + 1, Role::Follow);
    game.roles[n] = Role::Maximize;
    game.followed = &profile;
    auto best = solve_single_value_game(space, game, options.solve);
    for (StateIndex s = 0; s < space.size(); ++s) {
      const double g = std::max(0.0, best.values[s] - report.values(n, s));
      report.state_gap[s] = std::max(report.state_gap[s], g);
      report.gap[n - 1] = std::max(report.gap[n - 1], g);
      if (g > worst) {
        worst = g;
        report.worst_state = s;
        report.worst_player = n;
      }
    }
  }
  report.is_ne = report.max_gap() <= report.tol;
  return report;
}

std::string to_string(NashStatus status) {
  switch (status) {
    case NashStatus::Converged: return "converged";
    case NashStatus::NonConvergence: return "non-convergence";
    case NashStatus::NotAnEquilibrium: return "not-an-equilibrium";
  }
  return "unknown";
}

double equation_residual(const StateSpace& space, const GameParams& params,
                         const PositionalProfile& profile, const ValueVector& values) {
  const int players = space.players();
  const double gamma = params.gamma;
  double residual = 0.0;
  for (StateIndex s = 0; s < space.size(); ++s) {
    if (space.is_terminal(s)) {
      for (int m = 1; m <= players; ++m) residual = std::max(residual, std::abs(values(m, s)));
    } else if (space.is_capture(s)) {
      for (int m = 1; m <= players; ++m) {
        residual = std::max(residual, std::abs(values(m, s) - turn_payoff(space, params, s, m)));
      }
    } else {
      const int p = space.mover(s);
      const StateIndex next = space.successor(s, profile[s]);
      for (int m = 1; m <= players; ++m) {
        residual = std::max(residual, std::abs(values(m, s) - gamma * values(m, next)));
      }
      double best = values(p, next);
      for (Vertex a : space.mover_actions(s)) best = std::max(best, values(p, space.successor(s, a)));
      residual = std::max(residual, gamma * (best - values(p, next)));
    }
  }
  return residual;
}

PositionalNe solve_positional_ne(const StateSpace& space, const GameParams& params,
                                 const NashSolveOptions& options) {
  const int players = space.players();
  const std::size_t n = space.size();
  const double gamma = params.gamma;

  ValueVector u(players, n);
  for (StateIndex s = 0; s < space.terminal(); ++s) {
    if (!space.is_capture(s)) continue;
    for (int m = 1; m <= players; ++m) u(m, s) = turn_payoff(space, params, s, m);
  }
  ValueVector next = u;
  PositionalProfile profile = stay_profile(space);

  const std::size_t zero_sum_cap =
      std::max(contraction_sweep_bound(gamma, options.tol), n + 2);
  const std::size_t cap = options.max_sweeps ? options.max_sweeps : 10 * zero_sum_cap;

  PositionalNe result;
  NashReport& report = result.report;
  std::vector<std::size_t> hashes;
  std::vector<std::size_t> hash_sweeps;
  std::vector<double> scratch;
  int unchanged = 0;
  bool converged = false;

  for (std::size_t sweep = 1; sweep <= cap; ++sweep) {
    double residual = 0.0;
    std::size_t changes = 0;
    for (StateIndex s = 0; s < space.terminal(); ++s) {
      if (!space.is_noncapture(s)) continue;
      const int p = space.mover(s);
      auto actions = space.mover_actions(s);
      scratch.clear();
      for (Vertex a : actions) scratch.push_back(u(p, space.successor(s, a)));
      const Vertex choice = actions[first_best(scratch, true)];
      if (choice != profile[s]) {
        profile[s] = choice;
        ++changes;
      }
      const StateIndex succ = space.successor(s, choice);
      for (int m = 1; m <= players; ++m) {
        const double v = gamma * u(m, succ);
        residual = std::max(residual, std::abs(v - u(m, s)));
        next(m, s) = v;
      }
    }
    std::swap(u.data, next.data);
    report.sweeps = sweep;
    report.value_residual = residual;
    unchanged = changes == 0 ? unchanged + 1 : 0;
    if (residual <= options.tol && unchanged >= options.stable_sweeps) {
      converged = true;
      break;
    }
    if (changes != 0) {
      hashes.push_back(profile_hash(profile));
      hash_sweeps.push_back(sweep);
      if (auto period = repeating_period(hashes)) {
        report.cycle_length = *period;
        report.cycle_start = hash_sweeps[hashes.size() - 1 - *period];
        break;
      }
    }
  }

  result.profile = std::move(profile);
  if (!converged) {
    report.status = NashStatus::NonConvergence;
    return result;
  }
  result.values = profile_values(space, params, evaluate_outcomes(space, result.profile));
  report.equation_residual = equation_residual(space, params, result.profile, result.values);
  VerifyOptions verify;
  verify.gap_tol = options.gap_tol;
  verify.solve.tol = options.tol;
  report.verification = verify_positional_ne(space, params, result.profile, verify);
  const bool ok = report.equation_residual <= options.tol && report.verification->is_ne;
  report.status = ok ? NashStatus::Converged : NashStatus::NotAnEquilibrium;
  return result;
}

PositionalVerification check_cr_optimal_ne(const StateSpace& space, const GameParams& params,
                                           const VerifyOptions& options) {
  auto cr = solve_cr(space);
  if (!cr.cops_win) {
    throw PreconditionError(std::to_string(space.cop_count()) +
                            " cop(s) cannot capture from every state of this graph");
  }
  return verify_positional_ne(space, params, cr.optimal, options);
}

}  // namespace scar
