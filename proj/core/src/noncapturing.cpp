#include "scar/noncapturing.hpp"

#include <cmath>
#include <deque>

#include "scar/errors.hpp"

namespace scar {

namespace {

// Next vertex from `from` on a shortest path to `to`: the smallest neighbour
// one step closer.
Vertex step_toward(const Graph& g, const std::vector<std::vector<int>>& dist, Vertex from,
                   Vertex to) {
  if (from == to) return from;
  for (Vertex w : g.neighbors(from)) {
    if (dist[to][w] == dist[to][from] - 1) return w;
  }
  return from;
}

bool cops_stacked(const StateSpace& space, StateIndex s) {
  const Vertex x = space.position(s, 1);
  for (int k = 2; k <= space.cop_count(); ++k) {
    if (space.position(s, k) != x) return false;
  }
  return true;
}

}  // namespace

PositionalProfile merge_profile(const StateSpace& space) {
  const Graph& g = space.graph();
  std::vector<std::vector<int>> dist(static_cast<std::size_t>(g.vertex_count()) + 1);
  for (Vertex v = 1; v <= g.vertex_count(); ++v) dist[v] = g.distances_from(v);

  PositionalProfile profile = stay_profile(space);
  for (StateIndex s = 0; s < space.terminal(); ++s) {
    if (!space.is_noncapture(s)) continue;
    const int p = space.mover(s);
    if (p == space.robber()) continue;
    const Vertex here = space.position(s, p);
    Vertex target = space.position(s, 1);
    if (p == 1) {
      for (int k = 2; k <= space.cop_count(); ++k) {
        if (space.position(s, k) != here) {
          target = space.position(s, k);
          break;
        }
      }
    }
    profile[s] = step_toward(g, dist, here, target);
  }
  return profile;
}

NoncapturingProfile::NoncapturingProfile(const StateSpace& space, StateIndex s0)
    : space_(&space),
      s0_(s0),
      cops_(merge_profile(space)),
      duel_(std::make_shared<DuelTable>(space.graph())) {}

Vertex NoncapturingProfile::action(StateIndex s, int mode) const {
  if (!space_->is_noncapture(s)) return kNullMove;
  const int p = space_->mover(s);
  if (p != space_->robber()) return cops_[s];
  if (mode == kWaiting) return space_->position(s, p);
  return duel_->robber_move(*space_, s, mode);
}

int NoncapturingProfile::next_mode(StateIndex s, int mover, Vertex a, int mode) const {
  if (mode != kWaiting || mover == space_->robber()) return mode;
  return a == space_->position(s, mover) ? mode : mover;
}

Trace run(const StateSpace& space, const NoncapturingProfile& profile, std::size_t turn_cap) {
  return run_automaton(space, profile, profile.s0(), kWaiting, 0, {}, turn_cap);
}

NoncapturingVerification verify_noncapturing_ne(const StateSpace& space, const GameParams& params,
                                                const NoncapturingProfile& profile,
                                                const VerifyOptions& options) {
  const int players = space.players();
  NoncapturingVerification report;
  report.tol = options.gap_tol;
  report.payoffs = payoffs_of(space, params, run(space, profile));
  report.gain.assign(static_cast<std::size_t>(players), 0.0);

  // Cops: cop rewards are nonnegative, so the best response reaches some
  // capture state as early as possible or avoids capture altogether.
  const std::size_t modes = static_cast<std::size_t>(players);
  for (int n = 1; n < players; ++n) {
    std::vector<std::uint32_t> depth(space.size() * modes, kNever);
    std::deque<std::pair<StateIndex, int>> queue;
    depth[profile.s0() * modes] = 0;
    queue.emplace_back(profile.s0(), kWaiting);
    double best = 0.0;
    while (!queue.empty()) {
      auto [s, mode] = queue.front();
      queue.pop_front();
      const std::uint32_t d = depth[s * modes + mode];
      if (space.is_capture(s)) {
        best = std::max(best, std::pow(params.gamma, d) * turn_payoff(space, params, s, n));
        continue;
      }
      const int p = space.mover(s);
      auto visit = [&](Vertex a) {
        const StateIndex next = space.successor(s, a);
        const int next_mode = profile.next_mode(s, p, a, mode);
        auto& slot = depth[next * modes + next_mode];
        if (slot != kNever) return;
        slot = d + 1;
        queue.emplace_back(next, next_mode);
      };
      if (p == n) {
        for (Vertex a : space.mover_actions(s)) visit(a);
      } else {
        visit(profile.action(s, mode));
      }
    }
    report.gain[n - 1] = std::max(0.0, best - report.payoffs[n - 1]);
  }

  // Robber: the cops' merge moves do not depend on the robber's mode.
  SingleValueGame game;
  game.gamma = params.gamma;
  game.capture_reward = [&](StateIndex s) { return turn_payoff(space, params, s, players); };
  game.roles.assign(modes + 1, Role::Follow);
  game.roles[players] = Role::Maximize;
  game.followed = &profile.cop_moves();
  const auto robber = solve_single_value_game(space, game, options.solve);
  report.gain[players - 1] =
      std::max(0.0, robber.values[profile.s0()] - report.payoffs[players - 1]);

  report.is_ne = true;
  for (double g : report.gain) report.is_ne = report.is_ne && g <= report.tol;
  return report;
}

std::optional<NoncapturingNe> build_noncapturing_ne(const StateSpace& space,
                                                    const GameParams& params,
                                                    std::optional<StateIndex> s0,
                                                    const VerifyOptions& options) {
  DuelTable duel(space.graph());
  auto qualifies = [&](StateIndex s) {
    return space.is_noncapture(s) && space.mover(s) == 1 && cops_stacked(space, s) &&
           duel.robber_escapes(space.position(s, 1), space.position(s, space.robber()));
  };
  if (s0) {
    if (space.is_terminal(*s0) || !qualifies(*s0)) {
      throw PreconditionError(
          "the initial state must stack all cops on one vertex with cop 1 to move and the robber "
          "on a vertex where it escapes a lone cop");
    }
  } else {
    for (StateIndex s = 0; s < space.terminal() && !s0; ++s) {
      if (qualifies(s)) s0 = s;
    }
    if (!s0) return std::nullopt;
  }
  NoncapturingProfile profile(space, *s0);
  Trace trace = run(space, profile);
  auto verification = verify_noncapturing_ne(space, params, profile, options);
  return NoncapturingNe{std::move(profile), std::move(trace), std::move(verification)};
}

EscapeCertificate certify_robber_escape_from(const StateSpace& space, const CRResult& cr,
                                             StateIndex s0) {
  EscapeCertificate cert;
  cert.s0 = s0;
  std::vector<bool> seen(space.size(), false);
  std::deque<StateIndex> queue{s0};
  seen[s0] = true;
  cert.closed = true;
  while (!queue.empty()) {
    const StateIndex s = queue.front();
    queue.pop_front();
    ++cert.closure_states;
    if (!space.is_noncapture(s) || cr.table.finite(s)) {
      cert.closed = false;
      break;
    }
    auto push = [&](Vertex a) {
      const StateIndex next = space.successor(s, a);
      if (!seen[next]) {
        seen[next] = true;
        queue.push_back(next);
      }
    };
    if (space.mover(s) == space.robber()) {
      push(cr.optimal[s]);
    } else {
      for (Vertex a : space.mover_actions(s)) push(a);
    }
  }
  return cert;
}

std::optional<EscapeCertificate> certify_robber_escape(const StateSpace& space,
                                                       const CRResult& cr) {
  for (StateIndex s = 0; s < space.terminal(); ++s) {
    if (!space.is_noncapture(s) || space.mover(s) != 1 || cr.table.finite(s)) continue;
    auto cert = certify_robber_escape_from(space, cr, s);
    if (cert.closed) return cert;
  }
  return std::nullopt;
}

}  // namespace scar
