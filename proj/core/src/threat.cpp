#include "scar/threat.hpp"

#include <algorithm>
#include <cstdint>

#include "scar/cr_solver.hpp"
#include "scar/errors.hpp"

namespace scar {

namespace {

std::vector<PositionalProfile> punishing_parts(const std::vector<AuxSolution>& aux) {
  std::vector<PositionalProfile> out;
  out.reserve(aux.size());
  for (const auto& a : aux) out.push_back(a.strategy);
  return out;
}

// G(s) = max(local(s), γ·G(next(s))) on S_NC along the functional graph of
// `profile`; 0 on S_C and τ. Cycles are resolved exactly by walking them.
std::vector<double> discounted_path_max(const StateSpace& space, const PositionalProfile& profile,
                                        const std::vector<double>& local, double gamma) {
  const std::size_t n = space.size();
  std::vector<double> g(n, 0.0);
  enum : std::uint8_t { kUnseen, kOnStack, kDone };
  std::vector<std::uint8_t> mark(n, kUnseen);
  std::vector<std::size_t> stack_pos(n, 0);
  std::vector<StateIndex> stack;

  for (StateIndex start = 0; start < n; ++start) {
    if (mark[start] != kUnseen) continue;
    StateIndex s = start;
    while (mark[s] == kUnseen && space.is_noncapture(s)) {
      mark[s] = kOnStack;
      stack_pos[s] = stack.size();
      stack.push_back(s);
      s = space.successor(s, profile[s]);
    }
    if (mark[s] == kUnseen) mark[s] = kDone;  // capture state or τ: G = 0

    if (mark[s] == kOnStack) {
      // stack[k..] is a cycle; each member sees every other one once.
      const std::size_t k = stack_pos[s];
      const std::size_t len = stack.size() - k;
      for (std::size_t i = 0; i < len; ++i) {
        double best = 0.0;
        double discount = 1.0;
        for (std::size_t j = 0; j < len; ++j) {
          best = std::max(best, discount * local[stack[k + (i + j) % len]]);
          discount *= gamma;
        }
        g[stack[k + i]] = best;
      }
      for (std::size_t i = k; i < stack.size(); ++i) mark[stack[i]] = kDone;
      stack.resize(k);
    }
    while (!stack.empty()) {
      const StateIndex t = stack.back();
      stack.pop_back();
      g[t] = std::max(local[t], gamma * g[space.successor(t, profile[t])]);
      mark[t] = kDone;
    }
  }
  return g;
}

}  // namespace

ThreatProfile build_threat_profile(const StateSpace& space, const std::vector<AuxSolution>& aux) {
  if (static_cast<int>(aux.size()) != space.players()) {
    throw ValidationError("one auxiliary solution per player is required");
  }
  ThreatProfile threat;
  threat.punishing = punishing_parts(aux);
  threat.cooperative.moves.assign(space.size(), kNullMove);
  for (StateIndex s = 0; s < space.terminal(); ++s) {
    if (space.is_noncapture(s)) threat.cooperative[s] = aux[space.mover(s) - 1].strategy[s];
  }
  return threat;
}

ThreatProfile build_threat_profile(const StateSpace& space, const GameParams& params,
                                   const SolveOptions& options) {
  return build_threat_profile(space, solve_aux_games(space, params, options));
}

ThreatProfile build_capturing_threat_ne(const StateSpace& space,
                                        const std::vector<AuxSolution>& aux) {
  if (static_cast<int>(aux.size()) != space.players()) {
    throw ValidationError("one auxiliary solution per player is required");
  }
  auto cr = solve_cr(space);
  if (!cr.cops_win) {
    throw PreconditionError("cop number exceeds " + std::to_string(space.cop_count()) +
                            ": no capturing profile from every state");
  }
  ThreatProfile threat;
  threat.kind = "capturing-threat";
  threat.cooperative = std::move(cr.optimal);
  threat.punishing = punishing_parts(aux);
  return threat;
}

ThreatProfile build_capturing_threat_ne(const StateSpace& space, const GameParams& params,
                                        const SolveOptions& options) {
  auto cr = solve_cr(space);
  if (!cr.cops_win) {
    throw PreconditionError("cop number exceeds " + std::to_string(space.cop_count()) +
                            ": no capturing profile from every state");
  }
  return build_capturing_threat_ne(space, solve_aux_games(space, params, options));
}

double ThreatVerification::max_gain() const {
  return gain.empty() ? 0.0 : *std::max_element(gain.begin(), gain.end());
}

ThreatVerification verify_threat_ne(const StateSpace& space, const GameParams& params,
                                    const ThreatProfile& threat, const VerifyOptions& options) {
  if (threat.players() != space.players()) {
    throw ValidationError("threat profile does not match the player count");
  }
  validate_profile(space, threat.cooperative);
  for (const auto& part : threat.punishing) validate_profile(space, part);

  ThreatVerification report;
  report.tol = options.gap_tol;
  report.cooperative_values =
      profile_values(space, params, evaluate_outcomes(space, threat.cooperative));
  report.gain.assign(static_cast<std::size_t>(space.players()), 0.0);
  report.state_gain.assign(space.size(), 0.0);
  const ValueVector& u = report.cooperative_values;

  double worst = -1.0;
  std::vector<double> local(space.size(), 0.0);
  for (int n = 1; n <= space.players(); ++n) {
    // Best response of n once everybody else punishes n.
    SingleValueGame game;
    game.gamma = params.gamma;
    game.capture_reward = [&](StateIndex s) { return turn_payoff(space, params, s, n); };
    game.roles.assign(static_cast<std::size_t>(space.players()) + 1, Role::Follow);
    game.roles[n] = Role::Maximize;
    game.followed = &threat.punishing[n - 1];
    const auto punished = solve_single_value_game(space, game, options.solve);

    std::fill(local.begin(), local.end(), 0.0);
    for (StateIndex s = 0; s < space.terminal(); ++s) {
      if (!space.is_noncapture(s) || space.mover(s) != n) continue;
      double best = 0.0;
      bool any = false;
      for (Vertex a : space.mover_actions(s)) {
        if (a == threat.cooperative[s]) continue;
        const double v = params.gamma * punished.values[space.successor(s, a)];
        best = any ? std::max(best, v) : v;
        any = true;
      }
      if (any) local[s] = std::max(0.0, best - u(n, s));
    }
    const auto gains = discounted_path_max(space, threat.cooperative, local, params.gamma);
    for (StateIndex s = 0; s < space.size(); ++s) {
      report.state_gain[s] = std::max(report.state_gain[s], gains[s]);
      report.gain[n - 1] = std::max(report.gain[n - 1], gains[s]);
      if (gains[s] > worst) {
        worst = gains[s];
        report.worst_state = s;
        report.worst_player = n;
      }
    }
  }
  report.is_ne = report.max_gain() <= report.tol;
  return report;
}

}  // namespace scar
