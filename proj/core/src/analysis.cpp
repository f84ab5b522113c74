#include "scar/analysis.hpp"

#include <charconv>
#include <cmath>
#include <random>
#include <sstream>

#include "scar/errors.hpp"
#include "scar/noncapturing.hpp"
#include "scar/simulate.hpp"
#include "scar/threat.hpp"

namespace scar {

namespace {

bool near_boundary(const GridPoint& p, double margin) {
  if (p.mode != EpsilonMode::Fixed || p.epsilon >= 1.0) return false;
  return std::abs(p.gamma - p.epsilon / (1.0 - p.epsilon)) < margin;
}

std::vector<GridPoint> all_points(const SweepGrid& grid, int players) {
  std::vector<GridPoint> out;
  const std::vector<double> split_only{0.0};
  const auto& epsilons = grid.mode == EpsilonMode::Fixed ? grid.epsilons : split_only;
  for (double gamma : grid.gammas) {
    for (double epsilon : epsilons) {
      GridPoint p{gamma, epsilon, grid.mode, false};
      auto check = validate_params(params_at(p, players, grid));
      p.omega_tilde = check.in_omega_tilde;
      out.push_back(p);
    }
  }
  return out;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw ParseError("bad grid value '" + item + "'");
    }
    if (item.find_first_not_of(" \t", used) != std::string::npos) {
      throw ParseError("bad grid value '" + item + "'");
    }
    out.push_back(v);
  }
  if (out.empty()) throw ParseError("empty grid list");
  return out;
}

nlohmann::json scenario_json(const Graph& g, int players, const GameParams& params,
                             const std::string& check, std::optional<std::string> s0) {
  nlohmann::json j = {{"check", check},
                      {"graph", to_edge_list(g)},
                      {"players", players},
                      {"gamma", params.gamma},
                      {"split_equivalent", params.mode == EpsilonMode::SplitEquivalent},
                      {"epsilon", params.epsilon},
                      {"allow_extended_epsilon", params.allow_extended_epsilon}};
  if (s0) j["s0"] = *s0;
  return j;
}

// Theorem ids.
constexpr const char* kThreatNe = "threat-profile-ne";
constexpr const char* kCopWinCapturing = "cop-win-every-ne-capturing";
constexpr const char* kCapturingExists = "capturing-ne-exists";
constexpr const char* kCrOptimalOmegaTilde = "cr-optimal-ne-on-omega-tilde";
constexpr const char* kNoncapturingExists = "noncapturing-ne-exists";
constexpr const char* kRobberEscape = "every-ne-noncapturing";

// Everything computed once per grid point.
struct PointResults {
  ThreatVerification threat;
  std::optional<ThreatProfile> capturing;
  std::optional<ThreatVerification> capturing_check;
  std::optional<ProfileOutcome> capturing_outcome;
  std::optional<PositionalVerification> cr_optimal;
  std::optional<PositionalNe> nash;
  std::optional<ProfileOutcome> nash_outcome;
  ProfileOutcome threat_outcome;
  ProfileOutcome cr_outcome;
};

PointResults evaluate_point(const StateSpace& space, const CRResult& cr, const GameParams& params,
                            bool cr_check, const SuiteOptions& options) {
  PointResults r;
  auto aux = solve_aux_games(space, params, options.verify.solve);
  auto threat = build_threat_profile(space, aux);
  r.threat = verify_threat_ne(space, params, threat, options.verify);
  r.threat_outcome = evaluate_outcomes(space, threat.cooperative);
  r.cr_outcome = evaluate_outcomes(space, cr.optimal);
  if (cr.cops_win) {
    r.capturing = build_capturing_threat_ne(space, aux);
    r.capturing_check = verify_threat_ne(space, params, *r.capturing, options.verify);
    r.capturing_outcome = evaluate_outcomes(space, r.capturing->cooperative);
    if (cr_check) r.cr_optimal = verify_positional_ne(space, params, cr.optimal, options.verify);
  }
  if (options.include_nash_sweeps) {
    NashSolveOptions nash;
    nash.tol = options.verify.solve.tol;
    nash.gap_tol = options.verify.gap_tol;
    r.nash = solve_positional_ne(space, params, nash);
    if (r.nash->report.status == NashStatus::Converged) {
      r.nash_outcome = evaluate_outcomes(space, r.nash->profile);
    }
  }
  return r;
}

// Per-start verdict of the per-state checks.
bool verdict(const std::string& check, const PointResults& r, StateIndex s0) {
  if (check == kThreatNe) return r.threat.is_ne_from(s0);
  if (check == kCapturingExists) {
    return r.capturing_check && r.capturing_check->is_ne_from(s0) &&
           r.capturing_outcome->capture_time[s0] != kNever;
  }
  if (check == kCrOptimalOmegaTilde) return r.cr_optimal && r.cr_optimal->is_ne_from(s0);
  if (check == kCopWinCapturing) {
    // Every profile some builder verified as an NE from s0 captures from s0.
    if (r.threat.is_ne_from(s0) && r.threat_outcome.capture_time[s0] == kNever) return false;
    if (r.capturing_check && r.capturing_check->is_ne_from(s0) &&
        r.capturing_outcome->capture_time[s0] == kNever) {
      return false;
    }
    if (r.cr_optimal && r.cr_optimal->is_ne_from(s0) && r.cr_outcome.capture_time[s0] == kNever) {
      return false;
    }
    if (r.nash_outcome && r.nash_outcome->capture_time[s0] == kNever) return false;
    return true;
  }
  throw ValidationError("unknown per-state check '" + check + "'");
}

bool noncapturing_verdict(const StateSpace& space, const GameParams& params,
                          std::optional<StateIndex> s0, const VerifyOptions& options,
                          std::optional<StateIndex>* used = nullptr) {
  auto built = build_noncapturing_ne(space, params, s0, options);
  if (!built) return false;
  if (used) *used = built->profile.s0();
  return built->trace.termination == Termination::CycleCertified && built->verification.is_ne;
}

std::string sampled_scope(const Graph& g, int players, std::size_t points, std::size_t starts) {
  return "sampled: " + std::to_string(points) + " (gamma, epsilon) grid points; exhaustive: all " +
         std::to_string(starts) + " non-capture start states; graph with " +
         std::to_string(g.vertex_count()) + " vertices, N=" + std::to_string(players);
}

// Shortest text that reads back to the same double.
std::string shortest(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

void record_failure(TheoremReport& report, nlohmann::json scenario) {
  ++report.failures;
  if (!report.counterexample) report.counterexample = std::move(scenario);
}

}  // namespace

std::vector<GridPoint> SweepGrid::points(int players) const {
  std::vector<GridPoint> out;
  for (const auto& p : all_points(*this, players)) {
    if (!near_boundary(p, boundary_margin)) out.push_back(p);
  }
  return out;
}

std::vector<GridPoint> SweepGrid::skipped(int players) const {
  std::vector<GridPoint> out;
  for (const auto& p : all_points(*this, players)) {
    if (near_boundary(p, boundary_margin)) out.push_back(p);
  }
  return out;
}

SweepGrid default_grid(int players) {
  if (players < 2) throw ValidationError("at least two players are required");
  SweepGrid grid;
  grid.gammas = {0.1, 0.3, 0.5, 0.9, 0.99};
  const double top = 1.0 / (players - 1);
  for (int i = 0; i < 5; ++i) grid.epsilons.push_back(top * i / 4.0);
  return grid;
}

SweepGrid parse_grid(const std::string& text) {
  const auto split = text.find(';');
  if (split == std::string::npos) throw ParseError("grid must look like 'g1,g2;e1,e2'");
  SweepGrid grid;
  grid.gammas = parse_list(text.substr(0, split));
  grid.epsilons = parse_list(text.substr(split + 1));
  return grid;
}

GameParams params_at(const GridPoint& point, int players, const SweepGrid& grid) {
  GameParams p;
  p.players = players;
  p.gamma = point.gamma;
  p.mode = point.mode;
  p.epsilon = point.epsilon;
  p.allow_extended_epsilon = grid.allow_extended_epsilon;
  return p;
}

SelfishCopNumberReport selfish_cop_number(const Graph& g, int max_cops, bool verify,
                                          const std::optional<SweepGrid>& grid,
                                          StateSpaceOptions options) {
  SelfishCopNumberReport report;
  report.certificate = cop_number(g, max_cops, options);
  report.cop_number = report.certificate.cop_number;
  if (!verify || !report.cop_number) return report;
  report.verified = true;

  const int k = *report.cop_number;
  {
    StateSpace space(g, k + 1, options);
    const SweepGrid used = grid ? *grid : default_grid(k + 1);
    auto cr = solve_cr(space);
    for (const auto& point : used.points(k + 1)) {
      const GameParams params = params_at(point, k + 1, used);
      auto threat = build_capturing_threat_ne(space, solve_aux_games(space, params));
      auto check = verify_threat_ne(space, params, threat);
      auto outcome = evaluate_outcomes(space, threat.cooperative);
      bool ok = check.is_ne;
      for (StateIndex s = 0; s < space.terminal() && ok; ++s) {
        ok = !space.is_noncapture(s) || outcome.capture_time[s] != kNever;
      }
      ++report.capturing_points;
      if (!ok) ++report.capturing_failures;
    }
  }
  if (k >= 2) {
    StateSpace space(g, k, options);
    auto cert = certify_robber_escape(space, solve_cr(space));
    if (cert) report.escape_start = to_string(space.state(cert->s0));
  }
  report.consistent = report.capturing_failures == 0 && (k == 1 || report.escape_start);
  return report;
}

nlohmann::json to_json(const SelfishCopNumberReport& report) {
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& step : report.certificate.certificate) {
    nlohmann::json t = nullptr;
    if (step.t_max) t = *step.t_max;
    steps.push_back({{"cops", step.cops}, {"states", step.states}, {"max_capture_time", t}});
  }
  nlohmann::json out = {{"cop_number", nullptr},
                        {"selfish_cop_number", nullptr},
                        {"certificate", std::move(steps)},
                        {"verified", report.verified}};
  if (report.cop_number) {
    out["cop_number"] = *report.cop_number;
    out["selfish_cop_number"] = *report.cop_number;
  }
  if (report.verified) {
    out["verification"] = {{"consistent", report.consistent},
                           {"capturing_grid_points", report.capturing_points},
                           {"capturing_failures", report.capturing_failures},
                           {"escape_start", report.escape_start ? nlohmann::json(*report.escape_start)
                                                                : nlohmann::json(nullptr)},
                           {"scope", "sampled over the grid, exhaustive over start states"}};
  }
  return out;
}

nlohmann::json to_json(const TheoremReport& report) {
  return {{"id", report.id},
          {"claim", report.claim},
          {"scope", report.scope},
          {"applicable", report.applicable},
          {"instances", report.instances},
          {"failures", report.failures},
          {"pass", report.pass()},
          {"counterexample", report.counterexample ? *report.counterexample : nlohmann::json(nullptr)}};
}

std::vector<TheoremReport> theorem_suite(const Graph& g, int players, const SweepGrid& grid,
                                         const SuiteOptions& options) {
  StateSpace space(g, players);
  auto cr = solve_cr(space);
  const bool cop_win = cop_number(g, 1).cop_number.has_value();
  const bool capturing_possible = cr.cops_win;
  const auto points = grid.points(players);

  std::vector<StateIndex> starts;
  for (StateIndex s = 0; s < space.terminal(); ++s) {
    if (space.is_noncapture(s)) starts.push_back(s);
  }
  const std::string scope = sampled_scope(g, players, points.size(), starts.size());

  TheoremReport threat{kThreatNe, "the threat profile built from the auxiliary games is an NE",
                       scope};
  TheoremReport all_capturing{kCopWinCapturing,
                              "on a cop-win graph every NE is capturing (checked on every NE "
                              "produced by the builders)",
                              scope, cop_win};
  TheoremReport capturing{kCapturingExists,
                          "with N-1 cops able to capture, a capturing NE exists from every start",
                          scope, capturing_possible};
  std::size_t tilde_points = 0;
  for (const auto& p : points) tilde_points += p.omega_tilde ? 1 : 0;
  TheoremReport tilde{kCrOptimalOmegaTilde,
                      "on the strict region gamma < eps/(1-eps) the CR-optimal profile is a "
                      "capturing NE",
                      sampled_scope(g, players, tilde_points, starts.size()),
                      capturing_possible && tilde_points > 0};
  TheoremReport noncapturing{kNoncapturingExists,
                             "with cop number at least 2, some start admits a non-capturing NE",
                             "sampled: " + std::to_string(points.size()) +
                                 " grid points; one constructed start per point",
                             !cop_win};
  TheoremReport escape{kRobberEscape,
                       "with cop number at least N, some start makes every NE non-capturing",
                       "parameter-free certificate: holds for every (gamma, epsilon)",
                       !capturing_possible};

  for (const auto& point : points) {
    const GameParams params = params_at(point, players, grid);
    const auto r = evaluate_point(space, cr, params, point.omega_tilde, options);
    for (StateIndex s0 : starts) {
      auto check = [&](TheoremReport& report) {
        if (!report.applicable) return;
        ++report.instances;
        if (!verdict(report.id, r, s0)) {
          record_failure(report, scenario_json(g, players, params, report.id, to_string(space.state(s0))));
        }
      };
      check(threat);
      check(all_capturing);
      check(capturing);
      if (point.omega_tilde) check(tilde);
    }
    if (noncapturing.applicable) {
      ++noncapturing.instances;
      std::optional<StateIndex> used;
      if (!noncapturing_verdict(space, params, std::nullopt, options.verify, &used)) {
        record_failure(noncapturing,
                       scenario_json(g, players, params, kNoncapturingExists,
                                     used ? std::optional(to_string(space.state(*used))) : std::nullopt));
      }
    }
  }
  if (escape.applicable) {
    ++escape.instances;
    auto cert = certify_robber_escape(space, cr);
    GameParams any;
    any.players = players;
    if (!cert) record_failure(escape, scenario_json(g, players, any, kRobberEscape, std::nullopt));
  }
  return {threat, all_capturing, capturing, tilde, noncapturing, escape};
}

bool replay(const nlohmann::json& scenario, const SuiteOptions& options) {
  const Graph g = parse_graph(scenario.at("graph").get<std::string>());
  const int players = scenario.at("players").get<int>();
  GameParams params;
  params.players = players;
  params.gamma = scenario.at("gamma").get<double>();
  params.epsilon = scenario.at("epsilon").get<double>();
  params.allow_extended_epsilon = scenario.value("allow_extended_epsilon", false);
  if (scenario.value("split_equivalent", false)) params.mode = EpsilonMode::SplitEquivalent;
  const std::string check = scenario.at("check").get<std::string>();

  StateSpace space(g, players);
  auto cr = solve_cr(space);
  std::optional<StateIndex> s0;
  if (scenario.contains("s0")) s0 = space.index(parse_game_state(scenario.at("s0").get<std::string>()));

  if (check == kRobberEscape) return certify_robber_escape(space, cr).has_value();
  if (check == kNoncapturingExists) {
    try {
      return noncapturing_verdict(space, params, s0, options.verify);
    } catch (const PreconditionError&) {
      return false;
    }
  }
  if (!s0) throw ValidationError("scenario for '" + check + "' needs s0");
  validate_params(params);
  const auto r = evaluate_point(space, cr, params, check == kCrOptimalOmegaTilde, options);
  return verdict(check, r, *s0);
}

EquivalenceReport payoff_equivalence_check(const Graph& g, int players, std::size_t trials,
                                           std::uint64_t seed, const std::string& gamma_text,
                                           const VerifyOptions& options) {
  StateSpace space(g, players);
  const Rational gamma = parse_rational(gamma_text);
  GameParams params;
  params.players = players;
  params.gamma = static_cast<double>(gamma);
  params.mode = EpsilonMode::SplitEquivalent;
  validate_params(params);
  ExactParams exact;
  exact.players = players;
  exact.gamma = gamma;
  exact.mode = EpsilonMode::SplitEquivalent;

  EquivalenceReport report;
  std::mt19937_64 rng(seed);
  std::vector<StateIndex> starts;
  for (StateIndex s = 0; s < space.terminal(); ++s) {
    if (space.is_noncapture(s)) starts.push_back(s);
  }

  for (std::size_t trial = 0; trial < trials; ++trial) {
    PositionalProfile profile = stay_profile(space);
    for (StateIndex s = 0; s < space.terminal(); ++s) {
      auto actions = space.mover_actions(s);
      if (actions.empty()) continue;
      std::uniform_int_distribution<std::size_t> pick(0, actions.size() - 1);
      profile[s] = actions[pick(rng)];
    }
    std::uniform_int_distribution<std::size_t> pick_start(0, starts.size() - 1);
    const StateIndex s0 = starts[pick_start(rng)];
    ++report.trials;

    const Trace trace = run(space, profile, s0);
    const auto payoffs = payoffs_of_exact(space, exact, trace);
    Rational cop_sum = 0;
    for (int n = 1; n < players; ++n) cop_sum += payoffs[n - 1];

    // The same moves in the CR game: one cop player moves every cop token in
    // turn, played directly on vertex positions.
    GameState st = space.state(s0);
    std::vector<Vertex> pos = st.positions;
    int token = st.mover;
    auto captured = [&] {
      for (int i = 0; i + 1 < players; ++i) {
        if (pos[i] == pos.back()) return true;
      }
      return false;
    };
    std::size_t t = 0;
    bool same_play = true;
    std::vector<StateIndex> played = trace.states();
    while (!captured() && t + 1 < played.size()) {
      const Vertex a = profile[space.index(GameState{pos, token})];
      if (!g.adjacent(pos[token - 1], a) && a != pos[token - 1]) same_play = false;
      pos[token - 1] = a;
      token = token == players ? 1 : token + 1;
      ++t;
      if (space.index(GameState{pos, token}) != played[t]) same_play = false;
    }
    Rational cr_payoff = 0;
    if (captured()) {
      cr_payoff = 1;
      for (std::size_t i = 0; i < t; ++i) cr_payoff *= gamma;
      ++report.captured;
    }
    const bool cr_capture_matches = captured() == trace.capture_time.has_value() &&
                                    (!trace.capture_time || *trace.capture_time == t);
    if (!same_play || !cr_capture_matches || cop_sum != cr_payoff ||
        payoffs[players - 1] != -cr_payoff) {
      ++report.mismatches;
    }
  }

  auto cr = solve_cr(space);
  if (cr.cops_win) {
    auto check = verify_positional_ne(space, params, cr.optimal, options);
    report.cr_optimal_checked = true;
    report.cr_optimal_is_ne = check.is_ne;
    report.cr_optimal_max_gap = check.max_gap();
  }
  return report;
}

nlohmann::json to_json(const EquivalenceReport& report) {
  return {{"trials", report.trials},
          {"captured", report.captured},
          {"mismatches", report.mismatches},
          {"cr_optimal_checked", report.cr_optimal_checked},
          {"cr_optimal_is_ne", report.cr_optimal_is_ne},
          {"cr_optimal_max_gap", report.cr_optimal_max_gap},
          {"pass", report.pass()}};
}

std::vector<SweepRow> sweep(const StateSpace& space, const SweepGrid& grid,
                            const std::vector<StateIndex>& starts, const VerifyOptions& options) {
  const int players = space.players();
  auto cr = solve_cr(space);
  std::vector<StateIndex> chosen = starts;
  if (chosen.empty()) {
    for (StateIndex s = 0; s < space.terminal(); ++s) {
      if (space.is_noncapture(s)) chosen.push_back(s);
    }
  }
  std::vector<SweepRow> rows;
  for (const auto& point : grid.points(players)) {
    const GameParams params = params_at(point, players, grid);
    auto threat = build_threat_profile(space, params, options.solve);
    auto outcome = evaluate_outcomes(space, threat.cooperative);
    std::optional<PositionalVerification> check;
    if (cr.cops_win) check = verify_positional_ne(space, params, cr.optimal, options);
    for (StateIndex s0 : chosen) {
      SweepRow row;
      row.point = point;
      row.s0 = s0;
      if (check) {
        row.cr_optimal_is_ne = check->is_ne_from(s0);
        row.max_gap = check->state_gap[s0];
      }
      if (outcome.capture_time[s0] != kNever) row.threat_capture_time = outcome.capture_time[s0];
      rows.push_back(row);
    }
  }
  return rows;
}

std::string sweep_csv(const StateSpace& space, const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "gamma,epsilon,s0,omega_tilde,cr_optimal_is_ne,max_gap,threat_capture_time\n";
  for (const auto& row : rows) {
    out << shortest(row.point.gamma) << ',';
    if (row.point.mode == EpsilonMode::SplitEquivalent) {
      out << "split";
    } else {
      out << shortest(row.point.epsilon);
    }
    out << ",\"" << to_string(space.state(row.s0)) << "\"," << (row.point.omega_tilde ? "true" : "false")
        << ',';
    if (row.cr_optimal_is_ne) {
      out << (*row.cr_optimal_is_ne ? "true" : "false") << ',' << shortest(row.max_gap);
    } else {
      out << "n/a,";
    }
    out << ',';
    if (row.threat_capture_time) {
      out << *row.threat_capture_time;
    } else {
      out << "inf";
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace scar
