#include "scar/cr_solver.hpp"

#include <algorithm>
#include <deque>

#include "scar/errors.hpp"

namespace scar {

CaptureTimeTable exact_capture_times(const StateSpace& space) {
  const std::size_t n = space.size();
  const int robber = space.robber();
  CaptureTimeTable table;
  table.time.assign(n, kNever);

  // Robber-turn states wait until every successor is labelled.
  std::vector<std::uint32_t> pending(n, 0);
  std::deque<StateIndex> queue;
  for (StateIndex s = 0; s < space.terminal(); ++s) {
    if (space.is_capture(s)) {
      table.time[s] = 0;
      queue.push_back(s);
    } else if (space.mover(s) == robber) {
      pending[s] = static_cast<std::uint32_t>(space.mover_actions(s).size());
    }
  }

  // FIFO order labels states in nondecreasing T, so the first labelled
  // successor of a cop state is a minimiser and the last one of a robber
  // state is a maximiser.
  while (!queue.empty()) {
    const StateIndex s = queue.front();
    queue.pop_front();
    const std::uint32_t t = table.time[s] + 1;
    space.for_each_predecessor(s, [&](StateIndex pred, Vertex) {
      if (table.time[pred] != kNever) return;
      if (space.mover(pred) == robber && --pending[pred] != 0) return;
      table.time[pred] = t;
      queue.push_back(pred);
    });
  }
  return table;
}

std::optional<std::uint32_t> t_n_max(const StateSpace& space, const CaptureTimeTable& table) {
  std::uint32_t best = 0;
  for (StateIndex s = 0; s < space.terminal(); ++s) {
    if (!space.is_noncapture(s)) continue;
    if (table[s] == kNever) return std::nullopt;
    best = std::max(best, table[s]);
  }
  return best;
}

PositionalProfile cr_optimal_profile(const StateSpace& space, const CaptureTimeTable& table) {
  PositionalProfile profile;
  profile.moves.assign(space.size(), kNullMove);
  const int robber = space.robber();
  for (StateIndex s = 0; s < space.terminal(); ++s) {
    if (!space.is_noncapture(s)) continue;
    const bool robber_turn = space.mover(s) == robber;
    auto actions = space.mover_actions(s);
    Vertex choice = actions.front();
    std::uint32_t best = table[space.successor(s, choice)];
    for (Vertex a : actions.subspan(1)) {
      const std::uint32_t t = table[space.successor(s, a)];
      if (robber_turn ? t > best : t < best) {
        best = t;
        choice = a;
      }
    }
    profile[s] = choice;
  }
  return profile;
}

DuelTable::DuelTable(const Graph& g)
    : space_(g, 2), table_(exact_capture_times(space_)), optimal_(cr_optimal_profile(space_, table_)) {}

StateIndex DuelTable::project(const StateSpace& big, StateIndex s, int k, int mover) const {
  return space_.index(GameState{{big.position(s, k), big.position(s, big.robber())}, mover});
}

std::uint32_t DuelTable::time(const StateSpace& big, StateIndex s, int k) const {
  return table_[project(big, s, k, big.mover(s) == big.robber() ? 2 : 1)];
}

Vertex DuelTable::cop_move(const StateSpace& big, StateIndex s, int k) const {
  return optimal_[project(big, s, k, 1)];
}

Vertex DuelTable::robber_move(const StateSpace& big, StateIndex s, int k) const {
  return optimal_[project(big, s, k, 2)];
}

bool DuelTable::robber_escapes(Vertex cop, Vertex robber) const {
  return table_[space_.index(GameState{{cop, robber}, 1})] == kNever;
}

PositionalProfile independent_pursuit_profile(const StateSpace& space) {
  DuelTable duel(space.graph());
  PositionalProfile profile = cr_optimal_profile(space, exact_capture_times(space));
  for (StateIndex s = 0; s < space.terminal(); ++s) {
    if (!space.is_noncapture(s)) continue;
    const int p = space.mover(s);
    if (p != space.robber()) profile[s] = duel.cop_move(space, s, p);
  }
  return profile;
}

CRResult solve_cr(const StateSpace& space) {
  CRResult result;
  result.table = exact_capture_times(space);
  result.t_max = t_n_max(space, result.table);
  result.cops_win = result.t_max.has_value();
  result.optimal = cr_optimal_profile(space, result.table);
  return result;
}

CopNumberResult cop_number(const Graph& g, int max_cops, StateSpaceOptions options) {
  if (max_cops < 1) throw ValidationError("max_cops must be at least 1");
  CopNumberResult result;
  for (int k = 1; k <= max_cops; ++k) {
    StateSpace space(g, k + 1, options);
    auto table = exact_capture_times(space);
    CopNumberStep step{k, space.size(), t_n_max(space, table)};
    result.certificate.push_back(step);
    if (step.t_max) {
      result.cop_number = k;
      break;
    }
  }
  return result;
}

DiscountedValue discounted_cr_value(const StateSpace& space, double gamma,
                                    const SolveOptions& options) {
  if (!(gamma > 0.0 && gamma < 1.0)) throw ValidationError("gamma must lie in (0,1)");
  SingleValueGame game;
  game.gamma = gamma;
  game.capture_reward = [](StateIndex) { return 1.0; };
  game.roles.assign(static_cast<std::size_t>(space.players()) + 1, Role::Maximize);
  game.roles[space.robber()] = Role::Minimize;
  auto solved = solve_single_value_game(space, game, options);
  return {std::move(solved.values), solved.sweeps, solved.residual};
}

}  // namespace scar
