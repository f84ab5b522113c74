#include "scar/threat.hpp"

#include <random>

#include <gtest/gtest.h>

#include "scar/cr_solver.hpp"
#include "scar/errors.hpp"
#include "scar/graph_catalog.hpp"
#include "scar/simulate.hpp"

namespace scar {
namespace {

GameParams fixed_params(int players, double gamma, double epsilon) {
  GameParams p;
  p.players = players;
  p.gamma = gamma;
  p.epsilon = epsilon;
  return p;
}

TEST(ThreatTest, PartsComeFromAuxGames) {
  StateSpace space(catalog::path(4), 3);
  const auto params = fixed_params(3, 0.9, 0.25);
  const auto aux = solve_aux_games(space, params);
  const auto threat = build_threat_profile(space, aux);
  ASSERT_EQ(threat.players(), 3);
  for (StateIndex s = 0; s < space.terminal(); ++s) {
    const int p = space.mover(s);
    EXPECT_EQ(threat.cooperative[s], aux[p - 1].strategy[s]);
    for (int m = 1; m <= 3; ++m) EXPECT_EQ(threat.action(s, m), aux[m - 1].strategy[s]);
  }
}

TEST(ThreatTest, ModeSwitchesOnlyOnObservedDeviation) {
  StateSpace space(catalog::path(4), 3);
  const auto threat = build_threat_profile(space, fixed_params(3, 0.9, 0.25));
  const StateIndex s = space.index({{1, 2, 4}, 2});
  const Vertex coop = threat.cooperative[s];
  EXPECT_EQ(threat.next_mode(s, 2, coop, kCooperative), kCooperative);
  const Vertex other = coop == 2 ? 3 : 2;
  EXPECT_EQ(threat.next_mode(s, 2, other, kCooperative), 2);
  // Punishment is absorbing.
  EXPECT_EQ(threat.next_mode(s, 2, coop, 3), 3);
}

TEST(ThreatTest, VerifiesOnSmallGraphs) {
  for (const char* name : {"P4", "C4", "tree9"}) {
    StateSpace space(catalog::by_name(name), 3);
    for (double gamma : {0.3, 0.99}) {
      for (double eps : {0.0, 0.5}) {
        const auto params = fixed_params(3, gamma, eps);
        const auto check = verify_threat_ne(space, params, build_threat_profile(space, params));
        EXPECT_TRUE(check.is_ne) << name << " " << gamma << " " << eps;
        EXPECT_LE(check.max_gain(), 1e-8);
      }
    }
  }
}

TEST(ThreatTest, CorruptedCooperationIsCaught) {
  StateSpace space(catalog::delayed_capture_tree(), 3);
  const auto params = fixed_params(3, 0.9, 0.0);
  auto threat = build_threat_profile(space, params);
  const PositionalProfile stay = stay_profile(space);
  for (StateIndex s = 0; s < space.terminal(); ++s) {
    if (space.mover(s) == 2) threat.cooperative[s] = stay[s];
  }
  const auto check = verify_threat_ne(space, params, threat);
  EXPECT_FALSE(check.is_ne);
  EXPECT_GT(check.gain[1], 0.1);
}

// Soundness against play: no random finite deviation plan beats the
// cooperative value the verifier reports.
TEST(ThreatTest, RandomDeviationsNeverPay) {
  std::mt19937_64 rng(5);
  for (const char* name : {"P4", "C4"}) {
    StateSpace space(catalog::by_name(name), 3);
    const auto params = fixed_params(3, 0.9, 0.25);
    const auto threat = build_threat_profile(space, params);
    const auto check = verify_threat_ne(space, params, threat);
    ASSERT_TRUE(check.is_ne);
    const auto n_vertices = space.graph().vertex_count();
    std::uniform_int_distribution<StateIndex> pick_state(0, space.terminal() - 1);
    std::uniform_int_distribution<Vertex> pick_vertex(1, n_vertices);
    for (int trial = 0; trial < 400; ++trial) {
      StateIndex s0 = pick_state(rng);
      if (!space.is_noncapture(s0)) continue;
      const int deviator = std::uniform_int_distribution<int>(1, 3)(rng);
      // Follow the play and pick a legal move on each of the deviator's turns.
      DeviationPlan plan;
      StateIndex s = s0;
      int mode = kCooperative;
      for (std::size_t t = 1; t <= 12 && space.is_noncapture(s); ++t) {
        const int mover = space.mover(s);
        Vertex a = threat.action(s, mode);
        if (mover == deviator) {
          auto acts = space.mover_actions(s);
          a = acts[static_cast<std::size_t>(pick_vertex(rng)) % acts.size()];
          plan[t] = a;
        }
        mode = threat.next_mode(s, mover, a, mode);
        s = space.transition(s, a);
      }
      const Trace played = run_with_forced_deviation(space, threat, deviator, plan, s0);
      const double got = total_payoff(space, params, played, deviator);
      EXPECT_LE(got, check.cooperative_values(deviator, s0) + 1e-9)
          << name << " s0=" << to_string(space.state(s0)) << " deviator " << deviator;
    }
  }
}

TEST(CapturingThreatTest, CapturesFromEveryStartAndVerifies) {
  for (const char* name : {"P4", "C4", "C5", "tree9"}) {
    StateSpace space(catalog::by_name(name), 3);
    const auto params = fixed_params(3, 0.9, 0.25);
    const auto threat = build_capturing_threat_ne(space, params);
    EXPECT_EQ(threat.kind, "capturing-threat");
    EXPECT_EQ(threat.cooperative, solve_cr(space).optimal);
    const auto outcome = evaluate_outcomes(space, threat.cooperative);
    for (StateIndex s = 0; s < space.terminal(); ++s) EXPECT_NE(outcome.capture_time[s], kNever);
    EXPECT_TRUE(verify_threat_ne(space, params, threat).is_ne) << name;
  }
}

TEST(CapturingThreatTest, RequiresEnoughCops) {
  StateSpace space(catalog::cycle(4), 2);
  EXPECT_THROW(build_capturing_threat_ne(space, fixed_params(2, 0.9, 0.0)), PreconditionError);
}

}  // namespace
}  // namespace scar
