#include "scar/state_space.hpp"

#include <set>

#include <gtest/gtest.h>

#include "scar/errors.hpp"
#include "scar/graph_catalog.hpp"

namespace scar {
namespace {

TEST(StateSpaceTest, Sizes) {
  EXPECT_EQ(StateSpace(catalog::delayed_capture_tree(), 3).size(), 2188u);
  EXPECT_EQ(StateSpace(catalog::path(2), 2).size(), 9u);
  EXPECT_EQ(StateSpace(catalog::path(2), 4).size(), 65u);
}

TEST(StateSpaceTest, CapacityGuard) {
  EXPECT_THROW(StateSpace(catalog::petersen(), 4, {.max_states = 1000}), CapacityError);
  EXPECT_THROW(StateSpace(catalog::path(3), 1), ValidationError);
}

TEST(StateSpaceTest, Classification) {
  StateSpace space(catalog::delayed_capture_tree(), 3);
  EXPECT_EQ(space.classify(space.index({{6, 1, 4}, 1})).kind, StateClass::NonCapture);
  auto both = space.classify(space.index({{3, 3, 3}, 2}));
  EXPECT_EQ(both.kind, StateClass::Capture);
  EXPECT_EQ(both.capturing_set, 0b11u);
  EXPECT_EQ(space.classify(space.terminal()).kind, StateClass::Terminal);
  EXPECT_EQ(space.capturing_set(space.index({{5, 3, 3}, 1})), 0b10u);
}

TEST(StateSpaceTest, ActionSets) {
  StateSpace space(catalog::delayed_capture_tree(), 3);
  StateIndex s = space.index({{6, 1, 4}, 1});
  EXPECT_EQ(space.actions(s, 1), (std::vector<Vertex>{5, 6, 7}));
  EXPECT_EQ(space.actions(s, 2), (std::vector<Vertex>{1}));
  StateIndex capture = space.index({{3, 5, 3}, 2});
  for (int n = 1; n <= 3; ++n) EXPECT_EQ(space.actions(capture, n), (std::vector<Vertex>{kNullMove}));
  EXPECT_EQ(space.actions(space.terminal(), 3), (std::vector<Vertex>{kNullMove}));
}

TEST(StateSpaceTest, Transitions) {
  StateSpace space(catalog::delayed_capture_tree(), 3);
  EXPECT_EQ(space.transition(GameState{{6, 1, 4}, 1}, 5), (GameState{{5, 1, 4}, 2}));
  EXPECT_EQ(space.transition(GameState{{3, 5, 3}, 2}, kNullMove), GameState::terminal());
  EXPECT_EQ(space.transition(space.terminal(), kNullMove), space.terminal());
  EXPECT_THROW(space.transition(GameState{{6, 1, 4}, 1}, 4), IllegalActionError);
  EXPECT_THROW(space.transition(GameState{{3, 5, 3}, 2}, 3), IllegalActionError);
}

TEST(StateSpaceTest, ParseAndPrintStates) {
  EXPECT_EQ(parse_game_state("6,1,4,1"), (GameState{{6, 1, 4}, 1}));
  EXPECT_EQ(parse_game_state("(6, 1, 4, 1)"), (GameState{{6, 1, 4}, 1}));
  EXPECT_EQ(to_string(GameState{{6, 1, 4}, 1}), "(6,1,4,1)");
  EXPECT_THROW(parse_game_state("6,a,4,1"), ParseError);
  EXPECT_THROW(parse_game_state("6,1"), ParseError);
}

// Exhaustive structural checks on every small space.
class StateSpaceExhaustive : public ::testing::TestWithParam<std::pair<const char*, int>> {};

TEST_P(StateSpaceExhaustive, IndexBijectionPartitionsAndTransitions) {
  auto [name, players] = GetParam();
  StateSpace space(catalog::by_name(name), players);
  const int v = space.graph().vertex_count();
  std::size_t expected = static_cast<std::size_t>(players);
  for (int i = 0; i < players; ++i) expected *= static_cast<std::size_t>(v);
  ASSERT_EQ(space.size(), expected + 1);

  std::vector<int> by_mover(static_cast<std::size_t>(players) + 1, 0);
  std::size_t capture = 0;
  std::size_t noncapture = 0;
  for (StateIndex s = 0; s < space.terminal(); ++s) {
    GameState st = space.state(s);
    ASSERT_EQ(space.index(st), s);
    ++by_mover[st.mover];
    bool any = false;
    for (int i = 0; i + 1 < players; ++i) any |= st.positions[i] == st.positions.back();
    ASSERT_EQ(space.is_capture(s), any);
    (any ? capture : noncapture)++;

    if (!any) {
      const int m = st.mover;
      // Robber always has a non-capturing option: staying put.
      if (m == players) {
        auto acts = space.actions(s, m);
        EXPECT_TRUE(std::binary_search(acts.begin(), acts.end(), st.positions.back()));
      }
      for (Vertex a : space.actions(s, m)) {
        GameState next = space.state(space.transition(s, a));
        EXPECT_EQ(next.mover, m == players ? 1 : m + 1);
        for (int n = 1; n <= players; ++n) {
          EXPECT_EQ(next.positions[n - 1], n == m ? a : st.positions[n - 1]);
        }
      }
    } else {
      EXPECT_EQ(space.transition(s, kNullMove), space.terminal());
    }
  }
  for (int m = 1; m <= players; ++m) EXPECT_EQ(by_mover[m], static_cast<int>(expected / players));
  EXPECT_EQ(capture + noncapture, expected);
}

TEST_P(StateSpaceExhaustive, PredecessorsInvertTransitions) {
  auto [name, players] = GetParam();
  StateSpace space(catalog::by_name(name), players);
  std::multiset<std::pair<StateIndex, StateIndex>> forward;
  for (StateIndex s = 0; s < space.terminal(); ++s)
    for (Vertex a : space.mover_actions(s)) forward.emplace(s, space.successor(s, a));
  std::multiset<std::pair<StateIndex, StateIndex>> backward;
  for (StateIndex s = 0; s < space.terminal(); ++s) {
    space.for_each_predecessor(s, [&](StateIndex pred, Vertex a) {
      EXPECT_EQ(space.successor(pred, a), s);
      backward.emplace(pred, s);
    });
  }
  EXPECT_EQ(forward, backward);
}

INSTANTIATE_TEST_SUITE_P(SmallSpaces, StateSpaceExhaustive,
                         ::testing::Values(std::make_pair("P2", 2), std::make_pair("P3", 3),
                                           std::make_pair("C4", 3), std::make_pair("K3", 4),
                                           std::make_pair("S3", 2)));

}  // namespace
}  // namespace scar
