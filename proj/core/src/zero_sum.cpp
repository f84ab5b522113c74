#include "scar/zero_sum.hpp"

#include <algorithm>
#include <cmath>

#include "scar/errors.hpp"

namespace scar {

namespace {

constexpr double kTieRelative = 1e-12;

bool within_tie(double candidate, double best, bool maximize) {
  const double slack = kTieRelative * std::abs(best);
  return maximize ? candidate >= best - slack : candidate <= best + slack;
}

}  // namespace

std::size_t contraction_sweep_bound(double gamma, double tol) {
  const double bound = std::ceil(std::log(tol * (1.0 - gamma)) / std::log(gamma));
  return static_cast<std::size_t>(std::max(0.0, bound)) + 10;
}

std::size_t first_best(const std::vector<double>& values, bool maximize) {
  double best = values.front();
  for (double v : values) best = maximize ? std::max(best, v) : std::min(best, v);
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (within_tie(values[i], best, maximize)) return i;
  }
  return 0;
}

ValueIterationResult solve_single_value_game(const StateSpace& space, const SingleValueGame& game,
                                             const SolveOptions& options) {
  if (static_cast<int>(game.roles.size()) != space.players() + 1) {
    throw ValidationError("roles must be given for players 1..N");
  }
  const bool needs_follow =
      std::find(game.roles.begin() + 1, game.roles.end(), Role::Follow) != game.roles.end();
  if (needs_follow && game.followed == nullptr) {
    throw ValidationError("Follow role requires a followed profile");
  }

  const std::size_t n = space.size();
  const StateIndex terminal = space.terminal();
  std::vector<double> values(n, 0.0);
  for (StateIndex s = 0; s < terminal; ++s) {
    if (space.is_capture(s)) values[s] = game.capture_reward(s);
  }
  std::vector<double> next = values;

  const std::size_t bound = contraction_sweep_bound(game.gamma, options.tol);
  const std::size_t cap = options.max_sweeps ? options.max_sweeps : std::max(bound, n + 2);

  ValueIterationResult result;
  for (std::size_t sweep = 1; sweep <= cap; ++sweep) {
    double residual = 0.0;
    for (StateIndex s = 0; s < terminal; ++s) {
      if (!space.is_noncapture(s)) continue;
      const Role role = game.roles[space.mover(s)];
      double v = 0.0;
      if (role == Role::Follow) {
        v = values[space.successor(s, (*game.followed)[s])];
      } else {
        auto actions = space.mover_actions(s);
        v = values[space.successor(s, actions.front())];
        for (Vertex a : actions.subspan(1)) {
          const double w = values[space.successor(s, a)];
          v = role == Role::Maximize ? std::max(v, w) : std::min(v, w);
        }
      }
      v *= game.gamma;
      residual = std::max(residual, std::abs(v - values[s]));
      next[s] = v;
    }
    values.swap(next);
    result.sweeps = sweep;
    result.residual = residual;
    if (residual == 0.0 || (residual <= options.tol && sweep >= bound)) break;
  }

  result.strategy.moves.assign(n, kNullMove);
  std::vector<double> scratch;
  for (StateIndex s = 0; s < terminal; ++s) {
    if (!space.is_noncapture(s)) continue;
    const Role role = game.roles[space.mover(s)];
    if (role == Role::Follow) {
      result.strategy[s] = (*game.followed)[s];
      continue;
    }
    auto actions = space.mover_actions(s);
    scratch.clear();
    for (Vertex a : actions) scratch.push_back(values[space.successor(s, a)]);
    result.strategy[s] = actions[first_best(scratch, role == Role::Maximize)];
  }
  result.values = std::move(values);
  return result;
}

}  // namespace scar
