#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "scar/cr_solver.hpp"
#include "scar/equilibria.hpp"
#include "scar/graph.hpp"
#include "scar/payoffs.hpp"

namespace scar {

struct GridPoint {
  double gamma = 0.0;
  double epsilon = 0.0;
  EpsilonMode mode = EpsilonMode::Fixed;
  bool omega_tilde = false;
};

/// Sampled parameter grid; the points are the Cartesian product γ × ε
/// (γ alone in SplitEquivalent mode).
struct SweepGrid {
  std::vector<double> gammas;
  std::vector<double> epsilons;
  EpsilonMode mode = EpsilonMode::Fixed;
  bool allow_extended_epsilon = false;
  /// Points with |γ - ε/(1-ε)| below this are skipped as ambiguous.
  double boundary_margin = 1e-6;

  /// Validated points in grid order. Throws ValidationError on any point
  /// outside the parameter domain for `players`.
  std::vector<GridPoint> points(int players) const;
  /// Grid points dropped for lying on the strict-inequality boundary.
  std::vector<GridPoint> skipped(int players) const;
};

/// γ ∈ {0.1, 0.3, 0.5, 0.9, 0.99}, five ε evenly spaced over [0, 1/(N-1)].
SweepGrid default_grid(int players);

/// "g1,g2,…;e1,e2,…".
SweepGrid parse_grid(const std::string& text);

GameParams params_at(const GridPoint& point, int players, const SweepGrid& grid);

struct SelfishCopNumberReport {
  std::optional<int> cop_number;
  CopNumberResult certificate;
  bool verified = false;
  /// Verification outcome (meaningful when `verified`).
  bool consistent = true;
  /// K = c(G): grid points at which a capturing NE from every start was
  /// built and verified.
  std::size_t capturing_points = 0;
  std::size_t capturing_failures = 0;
  /// K = c(G) - 1: a start from which the robber escapes K cops, making
  /// every NE there non-capturing.
  std::optional<std::string> escape_start;
};

/// Returns c(G) from the CR solver. With `verify`, samples the capturing-NE
/// existence at K = c(G) over `grid` and certifies non-existence at
/// K = c(G) - 1 through a robber escape start.
SelfishCopNumberReport selfish_cop_number(const Graph& g, int max_cops, bool verify = false,
                                          const std::optional<SweepGrid>& grid = std::nullopt,
                                          StateSpaceOptions options = {});

nlohmann::json to_json(const SelfishCopNumberReport& report);

struct TheoremReport {
  std::string id;
  std::string claim;
  /// What was actually checked, stated as sampled or exhaustive.
  std::string scope;
  bool applicable = true;
  std::size_t instances = 0;
  std::size_t failures = 0;
  /// Replayable scenario of the first failing instance.
  std::optional<nlohmann::json> counterexample;

  bool pass() const { return failures == 0; }
};

nlohmann::json to_json(const TheoremReport& report);

struct SuiteOptions {
  VerifyOptions verify;
  /// Also run solve_positional_ne at each grid point.
  bool include_nash_sweeps = true;
};

/// Runs every construction and verification whose hypotheses `g` satisfies.
std::vector<TheoremReport> theorem_suite(const Graph& g, int players, const SweepGrid& grid,
                                         const SuiteOptions& options = {});

/// Re-evaluates a counterexample scenario; returns the instance verdict.
bool replay(const nlohmann::json& scenario, const SuiteOptions& options = {});

struct EquivalenceReport {
  std::size_t trials = 0;
  std::size_t captured = 0;
  /// Trials where the exact cop-payoff sum differed from the CR payoff, or
  /// the two wirings produced different plays.
  std::size_t mismatches = 0;
  /// False when the cops cannot capture from every start; the CR-optimal
  /// check is then skipped.
  bool cr_optimal_checked = false;
  bool cr_optimal_is_ne = false;
  double cr_optimal_max_gap = 0.0;

  bool pass() const { return mismatches == 0 && (!cr_optimal_checked || cr_optimal_is_ne); }
};

/// Under SplitEquivalent payoffs: random positional profiles from random
/// starts, each played both in the N-player game and in the CR game where
/// one player moves every cop token; the sum of cop payoffs must equal the
/// CR cop payoff exactly and the robber payoffs must agree. Also verifies
/// the canonical CR-optimal profile as an NE from every start.
EquivalenceReport payoff_equivalence_check(const Graph& g, int players, std::size_t trials,
                                           std::uint64_t seed, const std::string& gamma = "0.9",
                                           const VerifyOptions& options = {});

nlohmann::json to_json(const EquivalenceReport& report);

struct SweepRow {
  GridPoint point;
  StateIndex s0 = 0;
  /// nullopt when the cops cannot capture from every state.
  std::optional<bool> cr_optimal_is_ne;
  double max_gap = 0.0;
  /// Capture time of the threat-NE play; nullopt for ∞.
  std::optional<std::uint32_t> threat_capture_time;
};

/// One row per grid point and start (every non-capture start when `starts`
/// is empty).
std::vector<SweepRow> sweep(const StateSpace& space, const SweepGrid& grid,
                            const std::vector<StateIndex>& starts = {},
                            const VerifyOptions& options = {});

std::string sweep_csv(const StateSpace& space, const std::vector<SweepRow>& rows);

}  // namespace scar
