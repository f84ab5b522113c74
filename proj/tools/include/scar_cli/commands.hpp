#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "scar/equilibria.hpp"
#include "scar/graph.hpp"
#include "scar/payoffs.hpp"

namespace scar::cli {

inline constexpr int kSchemaVersion = 1;

enum ExitCode : int {
  kOk = 0,
  kValidation = 2,
  kCapacity = 3,
  kNonConvergence = 4,
  kTheoremFailure = 5,
};

/// Everything a command needs, after merging a scenario file with flags.
/// Numbers keep the text they were given in so exact arithmetic can use it.
struct Scenario {
  std::optional<Graph> graph;
  /// "inline", "file:<path>" or "builtin:<name>".
  std::string graph_source;
  int players = 3;
  std::string gamma = "0.9";
  std::string epsilon = "0.25";
  bool split_equivalent = false;
  bool allow_extended_epsilon = false;
  std::optional<std::string> s0;
  double tol = 1e-10;
  double gap_tol = 1e-8;
  std::size_t max_sweeps = 0;
  std::uint64_t max_states = 50'000'000;
  std::optional<std::string> grid;
  int max_cops = 3;
  std::uint64_t seed = 1;

  const Graph& require_graph() const;
  /// Validated parameters. Throws ValidationError.
  GameParams params() const;
  ExactParams exact_params() const;
  VerifyOptions verify_options() const;
  nlohmann::json to_json() const;
};

/// Reads the JSON scenario format. Relative graph paths resolve against
/// `base_dir`.
Scenario parse_scenario(const nlohmann::json& j, const std::string& base_dir = ".");
Scenario load_scenario_file(const std::string& path);

/// Full command line without the program name, e.g. {"solve", "--n", "2"}.
/// Returns the process exit code; reports go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace scar::cli
