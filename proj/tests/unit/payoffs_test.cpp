#include "scar/payoffs.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "scar/errors.hpp"
#include "scar/graph_catalog.hpp"

namespace scar {
namespace {

GameParams fixed(int n, double gamma, double eps) {
  return {.players = n, .gamma = gamma, .mode = EpsilonMode::Fixed, .epsilon = eps};
}

TEST(PayoffsTest, ThreePlayerSplits) {
  StateSpace space(catalog::path(5), 3);
  GameParams p = fixed(3, 0.9, 0.2);
  StateIndex c2 = space.index({{1, 3, 3}, 1});
  EXPECT_DOUBLE_EQ(turn_payoff(space, p, c2, 1), 0.2);
  EXPECT_DOUBLE_EQ(turn_payoff(space, p, c2, 2), 0.8);
  EXPECT_DOUBLE_EQ(turn_payoff(space, p, c2, 3), -1.0);
  StateIndex both = space.index({{3, 3, 3}, 2});
  EXPECT_DOUBLE_EQ(turn_payoff(space, p, both, 1), 0.5);
  EXPECT_DOUBLE_EQ(turn_payoff(space, p, both, 2), 0.5);
  StateIndex none = space.index({{1, 2, 3}, 3});
  for (int n = 1; n <= 3; ++n) EXPECT_EQ(turn_payoff(space, p, none, n), 0.0);
  for (int n = 1; n <= 3; ++n) EXPECT_EQ(turn_payoff(space, p, space.terminal(), n), 0.0);
}

TEST(PayoffsTest, FourPlayerSplits) {
  GameParams p = fixed(4, 0.9, 0.3);
  // Cop 1 alone captures.
  EXPECT_DOUBLE_EQ(capture_share(p, 0b001, 1), 0.7);
  EXPECT_DOUBLE_EQ(capture_share(p, 0b001, 2), 0.15);
  EXPECT_DOUBLE_EQ(capture_share(p, 0b001, 3), 0.15);
  GameParams split{.players = 4, .gamma = 0.9, .mode = EpsilonMode::SplitEquivalent};
  for (CopSet set : {0b001u, 0b011u, 0b111u})
    for (int n = 1; n <= 3; ++n) EXPECT_DOUBLE_EQ(capture_share(split, set, n), 1.0 / 3.0);
}

TEST(PayoffsTest, DiscountedPayoff) {
  GameParams p = fixed(3, 0.9, 0.25);
  EXPECT_DOUBLE_EQ(discounted_payoff(p, 5, 0b10, 1), std::pow(0.9, 5) * 0.25);
  EXPECT_DOUBLE_EQ(discounted_payoff(p, 5, 0b10, 2), std::pow(0.9, 5) * 0.75);
  EXPECT_DOUBLE_EQ(discounted_payoff(p, 5, 0b10, 3), -std::pow(0.9, 5));
  EXPECT_DOUBLE_EQ(discounted_payoff(p, 13, 0b01, 1), std::pow(0.9, 13) * 0.75);
  for (int n = 1; n <= 3; ++n) EXPECT_EQ(discounted_payoff(p, std::nullopt, 0, n), 0.0);
}

TEST(PayoffsTest, ValidateParams) {
  EXPECT_FALSE(validate_params(fixed(3, 0.9, 0.25)).in_omega_tilde);
  EXPECT_TRUE(validate_params(fixed(3, 0.2, 0.5)).in_omega_tilde);
  EXPECT_THROW(validate_params(fixed(3, 1.0, 0.25)), ValidationError);
  EXPECT_THROW(validate_params(fixed(3, 0.0, 0.25)), ValidationError);
  EXPECT_THROW(validate_params(fixed(3, 0.5, 0.6)), ValidationError);
  EXPECT_THROW(validate_params(fixed(3, 0.5, -0.1)), ValidationError);
  GameParams extended = fixed(3, 0.5, 0.9);
  extended.allow_extended_epsilon = true;
  EXPECT_NO_THROW(validate_params(extended));
  // Boundary γ = ε/(1-ε) lies outside the strict set.
  EXPECT_FALSE(in_omega_tilde(0.5, 1.0 / 3.0 + 0.0));
  EXPECT_TRUE(in_omega_tilde(0.99, 1.0));
}

TEST(PayoffsTest, ZeroSumAtEveryCaptureState) {
  for (int n : {2, 3, 4}) {
    StateSpace space(catalog::path(3), n);
    for (EpsilonMode mode : {EpsilonMode::Fixed, EpsilonMode::SplitEquivalent}) {
      GameParams p{.players = n, .gamma = 0.5, .mode = mode, .epsilon = 1.0 / (n - 1) / 3.0};
      for (StateIndex s = 0; s < space.terminal(); ++s) {
        if (!space.is_capture(s)) continue;
        double sum = 0.0;
        for (int m = 1; m <= n; ++m) sum += turn_payoff(space, p, s, m);
        EXPECT_NEAR(sum, 0.0, 1e-12);
      }
    }
  }
}

TEST(PayoffsTest, ExactRationalArithmetic) {
  EXPECT_EQ(parse_rational("0.9"), Rational(9, 10));
  EXPECT_EQ(parse_rational("1/3"), Rational(1, 3));
  EXPECT_EQ(parse_rational("2"), Rational(2));
  EXPECT_THROW(parse_rational("0.9x"), ParseError);
  ExactParams p{.players = 3, .gamma = Rational(9, 10), .epsilon = Rational(1, 4)};
  Rational cooperative = discounted_payoff_exact(p, 5, 0b10, 1);
  EXPECT_EQ(cooperative, Rational(59049, 400000));
  Rational deviation = discounted_payoff_exact(p, 13, 0b01, 1);
  EXPECT_GT(deviation, cooperative);
}

}  // namespace
}  // namespace scar
