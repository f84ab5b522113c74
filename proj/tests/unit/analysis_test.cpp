#include "scar/analysis.hpp"

#include <gtest/gtest.h>

#include "oracles/minimax_oracle.hpp"
#include "scar/errors.hpp"
#include "scar/graph_catalog.hpp"

namespace scar {
namespace {

const TheoremReport& find(const std::vector<TheoremReport>& reports, const std::string& id) {
  for (const auto& r : reports) {
    if (r.id == id) return r;
  }
  throw std::runtime_error("missing report " + id);
}

SweepGrid small_grid() { return parse_grid("0.3,0.9;0,0.25,0.5"); }

TEST(GridTest, DefaultGrid) {
  const auto grid = default_grid(3);
  EXPECT_EQ(grid.gammas, (std::vector<double>{0.1, 0.3, 0.5, 0.9, 0.99}));
  EXPECT_EQ(grid.epsilons, (std::vector<double>{0.0, 0.125, 0.25, 0.375, 0.5}));
  EXPECT_EQ(grid.points(3).size(), 25u);
  EXPECT_DOUBLE_EQ(default_grid(5).epsilons.back(), 0.25);
}

TEST(GridTest, ParseAndReject) {
  const auto grid = parse_grid("0.5, 0.9;0,0.1");
  EXPECT_EQ(grid.gammas, (std::vector<double>{0.5, 0.9}));
  EXPECT_EQ(grid.epsilons, (std::vector<double>{0.0, 0.1}));
  EXPECT_THROW(parse_grid("0.5"), ParseError);
  EXPECT_THROW(parse_grid("0.5,x;0"), ParseError);
  EXPECT_THROW(parse_grid("1.5;0").points(3), ValidationError);
  EXPECT_THROW(parse_grid("0.5;0.75").points(3), ValidationError);
}

TEST(GridTest, BoundaryPointsAreSkipped) {
  auto grid = parse_grid("0.5,0.6;0.3333333333,0.2");
  const auto kept = grid.points(3);
  const auto skipped = grid.skipped(3);
  ASSERT_EQ(skipped.size(), 1u);
  EXPECT_DOUBLE_EQ(skipped[0].gamma, 0.5);
  EXPECT_EQ(kept.size(), 3u);
  // Classification of the kept points.
  for (const auto& p : kept) EXPECT_EQ(p.omega_tilde, p.gamma * (1 - p.epsilon) < p.epsilon);
}

TEST(TheoremSuiteTest, CopWinPath) {
  const auto reports = theorem_suite(catalog::path(4), 3, small_grid());
  ASSERT_EQ(reports.size(), 6u);
  for (const auto& r : reports) EXPECT_TRUE(r.pass()) << r.id;
  EXPECT_TRUE(find(reports, "cop-win-every-ne-capturing").applicable);
  EXPECT_FALSE(find(reports, "noncapturing-ne-exists").applicable);
  EXPECT_FALSE(find(reports, "every-ne-noncapturing").applicable);
  EXPECT_GT(find(reports, "threat-profile-ne").instances, 0u);
}

TEST(TheoremSuiteTest, CycleAndPetersen) {
  const auto c4 = theorem_suite(catalog::cycle(4), 3, small_grid());
  for (const auto& r : c4) EXPECT_TRUE(r.pass()) << r.id;
  EXPECT_FALSE(find(c4, "cop-win-every-ne-capturing").applicable);
  EXPECT_TRUE(find(c4, "capturing-ne-exists").applicable);
  EXPECT_TRUE(find(c4, "noncapturing-ne-exists").applicable);

  SuiteOptions fast;
  fast.include_nash_sweeps = false;
  const auto pete = theorem_suite(catalog::petersen(), 3, parse_grid("0.9;0.25"), fast);
  for (const auto& r : pete) EXPECT_TRUE(r.pass()) << r.id;
  EXPECT_FALSE(find(pete, "capturing-ne-exists").applicable);
  EXPECT_TRUE(find(pete, "every-ne-noncapturing").applicable);
}

TEST(TheoremSuiteTest, ReplayScenarios) {
  const std::string tree = to_edge_list(catalog::delayed_capture_tree());
  nlohmann::json scenario = {{"check", "threat-profile-ne"}, {"graph", tree}, {"players", 3},
                             {"gamma", 0.9},  {"epsilon", 0.25}, {"s0", "6,1,4,1"}};
  EXPECT_TRUE(replay(scenario));
  // Off the strict region the CR-optimal profile fails from this start.
  scenario["check"] = "cr-optimal-ne-on-omega-tilde";
  EXPECT_FALSE(replay(scenario));
  scenario["check"] = "no-such-check";
  EXPECT_THROW(replay(scenario), ValidationError);
}

TEST(EquivalenceTest, SplitEquivalentMatchesCr) {
  for (const char* name : {"C4", "tree9"}) {
    const auto report = payoff_equivalence_check(catalog::by_name(name), 3, 100, 42);
    EXPECT_EQ(report.trials, 100u);
    EXPECT_EQ(report.mismatches, 0u) << name;
    EXPECT_TRUE(report.cr_optimal_checked);
    EXPECT_TRUE(report.cr_optimal_is_ne) << name;
    EXPECT_TRUE(report.pass());
  }
  const auto a = to_json(payoff_equivalence_check(catalog::cycle(4), 3, 30, 9));
  const auto b = to_json(payoff_equivalence_check(catalog::cycle(4), 3, 30, 9));
  EXPECT_EQ(a, b);
}

TEST(SelfishCopNumberTest, AgreesWithOracle) {
  for (const char* name : {"P4", "S3", "K3", "C4", "C5", "tree9"}) {
    const Graph g = catalog::by_name(name);
    const auto report = selfish_cop_number(g, 3);
    EXPECT_EQ(report.cop_number, oracle::MinimaxCaptureOracle::cop_number(g, 3)) << name;
  }
}

TEST(SelfishCopNumberTest, VerifyModeIsConsistent) {
  const auto c4 = selfish_cop_number(catalog::cycle(4), 3, true, parse_grid("0.5,0.9;0,0.5"));
  EXPECT_EQ(c4.cop_number, 2);
  EXPECT_TRUE(c4.verified);
  EXPECT_TRUE(c4.consistent);
  EXPECT_EQ(c4.capturing_points, 4u);
  EXPECT_TRUE(c4.escape_start);
  const auto json = to_json(c4);
  EXPECT_EQ(json["selfish_cop_number"], 2);
}

TEST(SweepTest, CsvRows) {
  StateSpace space(catalog::cycle(4), 3);
  const StateIndex s0 = space.index({{1, 1, 3}, 1});
  const auto rows = sweep(space, parse_grid("0.3;0,0.5"), {s0});
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_FALSE(rows[0].point.omega_tilde);
  EXPECT_TRUE(rows[1].point.omega_tilde);
  ASSERT_TRUE(rows[1].cr_optimal_is_ne);
  EXPECT_TRUE(*rows[1].cr_optimal_is_ne);
  const std::string csv = sweep_csv(space, rows);
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "gamma,epsilon,s0,omega_tilde,cr_optimal_is_ne,max_gap,threat_capture_time");
  EXPECT_NE(csv.find("0.3,0.5,\"(1,1,3,1)\",true,true,"), std::string::npos);
}

}  // namespace
}  // namespace scar
