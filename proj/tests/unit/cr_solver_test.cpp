#include "scar/cr_solver.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "oracles/minimax_oracle.hpp"
#include "scar/errors.hpp"
#include "scar/graph_catalog.hpp"

namespace scar {
namespace {

TEST(CrSolverTest, KnownCaptureTimes) {
  StateSpace p3(catalog::path(3), 2);
  auto t = exact_capture_times(p3);
  EXPECT_EQ(t[p3.index({{1, 3}, 1})], 3u);
  EXPECT_EQ(t[p3.index({{2, 3}, 1})], 1u);

  StateSpace k2(catalog::path(2), 2);
  EXPECT_EQ(exact_capture_times(k2)[k2.index({{1, 2}, 2})], 2u);

  StateSpace c4(catalog::cycle(4), 2);
  auto tc = exact_capture_times(c4);
  EXPECT_EQ(tc[c4.index({{1, 3}, 1})], kNever);
  EXPECT_FALSE(t_n_max(c4, tc).has_value());
}

TEST(CrSolverTest, CopNumbers) {
  EXPECT_EQ(cop_number(catalog::path(4), 3).cop_number, 1);
  EXPECT_EQ(cop_number(catalog::cycle(4), 3).cop_number, 2);
  EXPECT_EQ(cop_number(catalog::petersen(), 3).cop_number, 3);
  auto capped = cop_number(catalog::cycle(5), 1);
  EXPECT_FALSE(capped.cop_number.has_value());
  ASSERT_EQ(capped.certificate.size(), 1u);
  EXPECT_FALSE(capped.certificate[0].t_max.has_value());
}

TEST(CrSolverTest, CopNumberRespectsCapacity) {
  EXPECT_THROW(cop_number(catalog::petersen(), 5, {.max_states = 10000}), CapacityError);
}

TEST(CrSolverTest, DiscountedValueMatchesCaptureTime) {
  StateSpace p3(catalog::path(3), 2);
  auto v = discounted_cr_value(p3, 0.5);
  EXPECT_NEAR(v.values[p3.index({{1, 3}, 1})], 0.125, 1e-12);

  for (const char* name : {"P4", "C4", "S3", "K3"}) {
    StateSpace space(catalog::by_name(name), 3);
    auto table = exact_capture_times(space);
    auto value = discounted_cr_value(space, 0.7);
    for (StateIndex s = 0; s < space.terminal(); ++s) {
      const double expected = table.finite(s) ? std::pow(0.7, table[s]) : 0.0;
      EXPECT_NEAR(value.values[s], expected, 1e-9) << name << " " << to_string(space.state(s));
    }
  }
}

TEST(CrSolverTest, OptimalProfileRealisesCaptureTimes) {
  for (const char* name : {"P5", "C5", "tree9", "S4"}) {
    StateSpace space(catalog::by_name(name), 3);
    auto cr = solve_cr(space);
    auto outcome = evaluate_outcomes(space, cr.optimal);
    for (StateIndex s = 0; s < space.terminal(); ++s) {
      EXPECT_EQ(outcome.capture_time[s], cr.table[s]) << name << " " << to_string(space.state(s));
    }
  }
}

// Every connected graph on up to five vertices, against two independent
// oracles.
TEST(CrSolverTest, AgreesWithOraclesOnSmallGraphs) {
  for (const Graph& g : catalog::connected_graphs_up_to(5)) {
    for (int players : {2, 3}) {
      StateSpace space(g, players);
      auto table = exact_capture_times(space);
      auto naive = oracle::naive_sweep_capture_times(space);
      oracle::MinimaxCaptureOracle minimax(g, players);
      for (StateIndex s = 0; s < space.terminal(); ++s) {
        ASSERT_EQ(table[s], naive[s]) << to_edge_list(g) << to_string(space.state(s));
        GameState st = space.state(s);
        auto t = minimax.capture_time(st.positions, st.mover);
        ASSERT_EQ(table.finite(s), t.has_value()) << to_edge_list(g) << to_string(st);
        if (t) ASSERT_EQ(table[s], static_cast<std::uint32_t>(*t));
      }
    }
  }
}

TEST(CrSolverTest, CopNumberAgreesWithOracle) {
  for (const Graph& g : catalog::connected_graphs_up_to(5)) {
    EXPECT_EQ(cop_number(g, 2).cop_number, oracle::MinimaxCaptureOracle::cop_number(g, 2))
        << to_edge_list(g);
  }
}

TEST(CrSolverTest, MoreCopsNeverSlower) {
  for (const char* name : {"P5", "C5", "tree9"}) {
    Graph g = catalog::by_name(name);
    StateSpace two(g, 2);
    StateSpace three(g, 3);
    auto t2 = exact_capture_times(two);
    auto t3 = exact_capture_times(three);
    for (StateIndex s = 0; s < two.terminal(); ++s) {
      GameState st = two.state(s);
      // Put the extra cop on cop 1's vertex; cop 1's tour now takes two turns.
      if (st.mover != 1) continue;
      GameState wide{{st.positions[0], st.positions[0], st.positions[1]}, 1};
      const auto a = t2[s];
      const auto b = t3[three.index(wide)];
      if (a == kNever) continue;
      EXPECT_NE(b, kNever);
    }
  }
}

}  // namespace
}  // namespace scar
