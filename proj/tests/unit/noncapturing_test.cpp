#include "scar/noncapturing.hpp"

#include <random>

#include <gtest/gtest.h>

#include "oracles/minimax_oracle.hpp"
#include "scar/errors.hpp"
#include "scar/graph_catalog.hpp"

namespace scar {
namespace {

GameParams fixed_params(int players, double gamma, double epsilon) {
  GameParams p;
  p.players = players;
  p.gamma = gamma;
  p.epsilon = epsilon;
  return p;
}

TEST(NoncapturingTest, StackedCopsOnCycle) {
  StateSpace space(catalog::cycle(4), 3);
  for (double eps : {0.0, 0.25, 0.5}) {
    const auto built = build_noncapturing_ne(space, fixed_params(3, 0.9, eps));
    ASSERT_TRUE(built);
    const GameState st = space.state(built->profile.s0());
    EXPECT_EQ(st.positions[0], st.positions[1]);
    EXPECT_EQ(st.mover, 1);
    EXPECT_EQ(built->trace.termination, Termination::CycleCertified);
    EXPECT_FALSE(built->trace.capture_time);
    EXPECT_TRUE(built->verification.is_ne);
    for (double g : built->verification.gain) EXPECT_LE(g, 1e-8);
  }
}

TEST(NoncapturingTest, NotApplicableOnCopWinGraph) {
  StateSpace space(catalog::path(3), 3);
  EXPECT_FALSE(build_noncapturing_ne(space, fixed_params(3, 0.9, 0.25)));
}

TEST(NoncapturingTest, RejectsWrongStart) {
  StateSpace space(catalog::cycle(4), 3);
  EXPECT_THROW(build_noncapturing_ne(space, fixed_params(3, 0.9, 0.25), space.index({{1, 2, 3}, 1})),
               PreconditionError);
  EXPECT_THROW(build_noncapturing_ne(space, fixed_params(3, 0.9, 0.25), space.index({{1, 1, 3}, 2})),
               PreconditionError);
}

TEST(NoncapturingTest, MergeMovesStepTowardCopOne) {
  StateSpace space(catalog::path(5), 3);
  const auto merge = merge_profile(space);
  EXPECT_EQ(merge[space.index({{1, 5, 3}, 2})], 4);
  EXPECT_EQ(merge[space.index({{1, 5, 3}, 1})], 2);
  EXPECT_EQ(merge[space.index({{2, 2, 4}, 1})], 2);
}

// No random finite deviation of any player improves on the construction's
// payoffs (all zero).
TEST(NoncapturingTest, RandomDeviationsNeverPay) {
  std::mt19937_64 rng(3);
  for (const char* name : {"C4", "C5", "petersen"}) {
    StateSpace space(catalog::by_name(name), 3);
    const auto params = fixed_params(3, 0.9, 0.25);
    const auto built = build_noncapturing_ne(space, params);
    ASSERT_TRUE(built);
    const auto& profile = built->profile;
    for (int trial = 0; trial < 100; ++trial) {
      const int deviator = std::uniform_int_distribution<int>(1, 3)(rng);
      DeviationPlan plan;
      StateIndex s = profile.s0();
      int mode = kWaiting;
      for (std::size_t t = 1; t <= 15 && space.is_noncapture(s); ++t) {
        const int mover = space.mover(s);
        Vertex a = profile.action(s, mode);
        if (mover == deviator) {
          auto acts = space.mover_actions(s);
          a = acts[std::uniform_int_distribution<std::size_t>(0, acts.size() - 1)(rng)];
          plan[t] = a;
        }
        mode = profile.next_mode(s, mover, a, mode);
        s = space.transition(s, a);
      }
      const Trace played = run_automaton(space, profile, profile.s0(), kWaiting, deviator, plan);
      EXPECT_LE(total_payoff(space, params, played, deviator), 1e-12) << name << " deviator " << deviator;
    }
  }
}

TEST(EscapeCertificateTest, PetersenWithTwoCops) {
  StateSpace space(catalog::petersen(), 3);
  const auto cr = solve_cr(space);
  const auto cert = certify_robber_escape(space, cr);
  ASSERT_TRUE(cert);
  EXPECT_TRUE(cert->closed);
  EXPECT_GT(cert->closure_states, 1u);
  const GameState st = space.state(cert->s0);
  oracle::MinimaxCaptureOracle minimax(space.graph(), 3);
  EXPECT_FALSE(minimax.capture_time(st.positions, st.mover));
}

TEST(EscapeCertificateTest, NoneWhenCopsWin) {
  StateSpace space(catalog::cycle(5), 3);
  EXPECT_FALSE(certify_robber_escape(space, solve_cr(space)));
  StateSpace two(catalog::cycle(5), 2);
  const auto cr = solve_cr(two);
  const auto cert = certify_robber_escape(two, cr);
  ASSERT_TRUE(cert);
  // A capturable start does not certify.
  EXPECT_FALSE(certify_robber_escape_from(two, cr, two.index({{1, 2}, 1})).closed);
}

}  // namespace
}  // namespace scar
