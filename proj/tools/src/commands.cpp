#include "scar_cli/commands.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "scar/analysis.hpp"
#include "scar/cr_solver.hpp"
#include "scar/errors.hpp"
#include "scar/graph_catalog.hpp"
#include "scar/noncapturing.hpp"
#include "scar/simulate.hpp"
#include "scar/threat.hpp"

namespace scar::cli {

namespace {

// Decimal, fraction or scientific notation.
Rational parse_exact(const std::string& text, const std::string& what) {
  try {
    return parse_rational(text);
  } catch (const ParseError&) {
  }
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || !std::isfinite(v)) {
    throw ParseError(what + " must be a number, got '" + text + "'");
  }
  return Rational(v);
}

double parse_real(const std::string& text, const std::string& what) {
  return static_cast<double>(parse_exact(text, what));
}

std::string number_text(const nlohmann::json& j, const std::string& key) {
  const auto& v = j.at(key);
  if (v.is_number()) return v.dump();
  if (v.is_string()) return v.get<std::string>();
  throw ParseError("scenario key '" + key + "' must be a number");
}

StateIndex resolve_state(const StateSpace& space, const std::string& text) {
  if (text == "tau" || text == "τ") {
    throw ValidationError("the initial state must not be the terminal state tau");
  }
  return space.index(parse_game_state(text));
}

std::string fixed(double v, int digits = 6) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << v;
  return s.str();
}

std::string rational_text(const Rational& r) {
  std::ostringstream s;
  s << r;
  return s.str();
}

nlohmann::json doubles(const std::vector<double>& v) { return nlohmann::json(v); }

enum class Format { Json, Csv, Table };

void emit(std::ostream& out, const std::string& command, const Scenario& sc,
          nlohmann::json result) {
  nlohmann::json report = {{"schema_version", kSchemaVersion},
                           {"command", command},
                           {"scenario", sc.to_json()},
                           {"result", std::move(result)}};
  out << report.dump(2) << '\n';
}

std::string player_name(const StateSpace& space, int n) {
  return n == space.robber() ? "R" : "C" + std::to_string(n);
}

std::string capture_line(const StateSpace& space, const Trace& trace) {
  if (!trace.capture_time) {
    return "no capture (" + to_string(trace.termination) + ")";
  }
  std::string who;
  for (int i = 1; i <= space.cop_count(); ++i) {
    if ((trace.capturing_set >> (i - 1)) & 1U) who += (who.empty() ? "" : ", ") + player_name(space, i);
  }
  return "T_C = " + std::to_string(*trace.capture_time) + ", captured by " + who;
}

nlohmann::json trace_summary(const StateSpace& space, const GameParams& params, const Trace& trace) {
  nlohmann::json j = to_json(space, trace);
  j["capturing"] = trace.capture_time.has_value();
  if (trace.termination != Termination::TurnCapHit) j["payoffs"] = doubles(payoffs_of(space, params, trace));
  return j;
}

void print_payoffs(std::ostream& out, const StateSpace& space, const GameParams& params,
                   const Trace& trace) {
  if (trace.termination == Termination::TurnCapHit) return;
  const auto q = payoffs_of(space, params, trace);
  for (int n = 1; n <= space.players(); ++n) {
    out << "Q^" << n << " (" << player_name(space, n) << ") = " << std::setprecision(12) << q[n - 1]
        << '\n';
  }
}

// Q^n of a finished play written in γ and ε.
std::string symbolic_payoff(const StateSpace& space, const GameParams& params, const Trace& trace,
                            int n) {
  if (!trace.capture_time) return "0";
  const std::string discount = "γ^" + std::to_string(*trace.capture_time);
  if (n == space.robber()) return "-" + discount;
  const int cops = space.cop_count();
  const int k = std::popcount(trace.capturing_set);
  auto over = [](int d) { return d == 1 ? std::string() : "/" + std::to_string(d); };
  if (params.mode == EpsilonMode::SplitEquivalent || k == cops) return discount + over(cops);
  if ((trace.capturing_set >> (n - 1)) & 1U) return discount + "·(1-ε)" + over(k);
  return discount + "·ε" + over(cops - k);
}

std::optional<StateIndex> optional_s0(const Scenario& sc, const StateSpace& space) {
  if (!sc.s0) return std::nullopt;
  return resolve_state(space, *sc.s0);
}

StateIndex require_s0(const Scenario& sc, const StateSpace& space) {
  if (!sc.s0) throw ValidationError("an initial state is required (--s0 \"x1,...,xN,p\")");
  return resolve_state(space, *sc.s0);
}

StateSpace make_space(const Scenario& sc) {
  return StateSpace(sc.require_graph(), sc.players, StateSpaceOptions{sc.max_states});
}

SweepGrid resolve_grid(const Scenario& sc, int players) {
  SweepGrid grid = sc.grid ? parse_grid(*sc.grid) : default_grid(players);
  grid.mode = sc.split_equivalent ? EpsilonMode::SplitEquivalent : EpsilonMode::Fixed;
  grid.allow_extended_epsilon = sc.allow_extended_epsilon;
  return grid;
}

nlohmann::json grid_points_json(const std::vector<GridPoint>& points) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& p : points) out.push_back({{"gamma", p.gamma}, {"epsilon", p.epsilon}});
  return out;
}

DeviationPlan parse_plan(const std::string& text) {
  DeviationPlan plan;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto eq = item.find('=');
    try {
      if (eq == std::string::npos) throw std::invalid_argument(item);
      const long turn = std::stol(item.substr(0, eq));
      const int v = std::stoi(item.substr(eq + 1));
      if (turn < 1) throw std::invalid_argument(item);
      plan[static_cast<std::size_t>(turn)] = v;
    } catch (const std::exception&) {
      throw ParseError("deviation plan entries look like 'turn=vertex', got '" + item + "'");
    }
  }
  return plan;
}

// --- commands -------------------------------------------------------------

struct SolveFlags {
  bool no_fallback = false;
};

int cmd_solve(const Scenario& sc, Format fmt, const SolveFlags& flags, std::ostream& out,
              std::ostream& err) {
  const GameParams params = sc.params();
  StateSpace space = make_space(sc);
  const StateIndex s0 = require_s0(sc, space);

  NashSolveOptions options;
  options.tol = sc.tol;
  options.gap_tol = sc.gap_tol;
  options.max_sweeps = sc.max_sweeps;
  const auto ne = solve_positional_ne(space, params, options);

  nlohmann::json nash = {{"status", to_string(ne.report.status)},
                         {"sweeps", ne.report.sweeps},
                         {"value_residual", ne.report.value_residual},
                         {"equation_residual", ne.report.equation_residual}};
  if (ne.report.cycle_length) {
    nash["cycle_start"] = *ne.report.cycle_start;
    nash["cycle_length"] = *ne.report.cycle_length;
  }

  nlohmann::json result = {{"nash_search", nash}};
  std::vector<double> values;
  std::optional<Trace> trace;
  if (ne.report.status == NashStatus::Converged) {
    const auto& v = *ne.report.verification;
    for (int m = 1; m <= space.players(); ++m) values.push_back(ne.values(m, s0));
    trace = run(space, ne.profile, s0);
    result["equilibrium"] = "positional";
    result["verification"] = {{"is_ne_from_s0", v.is_ne_from(s0)},
                              {"state_gap", v.state_gap[s0]},
                              {"player_gaps", doubles(v.gap)},
                              {"tol", v.tol}};
  } else if (flags.no_fallback) {
    if (fmt == Format::Json) emit(out, "solve", sc, result);
    err << "positional NE search did not converge (" << to_string(ne.report.status) << ")\n";
    return kNonConvergence;
  } else {
    const auto threat = build_threat_profile(space, params, sc.verify_options().solve);
    const auto v = verify_threat_ne(space, params, threat, sc.verify_options());
    for (int m = 1; m <= space.players(); ++m) values.push_back(v.cooperative_values(m, s0));
    trace = run(space, threat, s0);
    result["equilibrium"] = "threat";
    result["verification"] = {{"is_ne_from_s0", v.is_ne_from(s0)},
                              {"state_gap", v.state_gain[s0]},
                              {"player_gaps", doubles(v.gain)},
                              {"tol", v.tol}};
  }
  result["values"] = doubles(values);
  result["trace"] = trace_summary(space, params, *trace);

  if (fmt == Format::Json) {
    emit(out, "solve", sc, result);
    return kOk;
  }
  out << "nash search: " << to_string(ne.report.status) << " after " << ne.report.sweeps
      << " sweeps\n";
  out << "equilibrium: " << result["equilibrium"].get<std::string>() << "\n";
  for (int m = 1; m <= space.players(); ++m) {
    out << "u^" << m << "(s0) = " << std::setprecision(12) << values[m - 1] << '\n';
  }
  out << render_turn_table(space, *trace) << capture_line(space, *trace) << '\n';
  out << "NE from s0: " << (result["verification"]["is_ne_from_s0"].get<bool>() ? "yes" : "no")
      << " (gap " << result["verification"]["state_gap"].get<double>() << ")\n";
  return kOk;
}

int cmd_reproduce_example(const Scenario& sc, Format fmt, std::ostream& out) {
  Scenario used = sc;
  used.graph = catalog::delayed_capture_tree();
  used.graph_source = "builtin:tree9";
  used.players = 3;
  used.split_equivalent = false;
  used.s0 = "(6,1,4,1)";
  const GameParams params = used.params();
  const ExactParams exact = used.exact_params();

  StateSpace space(*used.graph, 3);
  const StateIndex s0 = resolve_state(space, *used.s0);
  const auto profile = independent_pursuit_profile(space);
  const Trace play = run(space, profile, s0);
  const Trace deviation = run_with_forced_deviation(space, profile, 1, {{1, 7}}, s0);

  const auto q_play = payoffs_of_exact(space, exact, play);
  const auto q_dev = payoffs_of_exact(space, exact, deviation);
  const bool simulated = q_dev[0] > q_play[0];

  // Closed form: the delay pays off iff γ^(T2-T1) > ε/(1-ε).
  const bool shape_ok = play.capture_time == 5u && play.capturing_set == 0b10 &&
                        deviation.capture_time == 13u && deviation.capturing_set == 0b01;
  const int delay = static_cast<int>(deviation.capture_time.value_or(0)) -
                    static_cast<int>(play.capture_time.value_or(0));
  Rational lhs = 1;
  for (int i = 0; i < delay; ++i) lhs *= exact.gamma;
  const bool closed_form = lhs * (1 - exact.epsilon) > exact.epsilon;
  const double threshold =
      params.epsilon >= 1.0 ? INFINITY : std::pow(params.epsilon / (1.0 - params.epsilon), 1.0 / delay);
  const bool pass = shape_ok && simulated == closed_form;

  if (fmt == Format::Json) {
    auto play_json = [&](const Trace& t, const std::vector<Rational>& q) {
      nlohmann::json j = trace_summary(space, params, t);
      nlohmann::json sym = nlohmann::json::array();
      nlohmann::json ex = nlohmann::json::array();
      for (int n = 1; n <= 3; ++n) {
        sym.push_back(symbolic_payoff(space, params, t, n));
        ex.push_back(rational_text(q[n - 1]));
      }
      j["symbolic_payoffs"] = std::move(sym);
      j["exact_payoffs"] = std::move(ex);
      j["table"] = render_turn_table(space, t);
      return j;
    };
    emit(out, "reproduce-example", used,
         {{"play", play_json(play, q_play)},
          {"deviation", play_json(deviation, q_dev)},
          {"deviation_plan", {{"player", 1}, {"turn", 1}, {"vertex", 7}}},
          {"threshold", threshold},
          {"deviation_profitable", simulated},
          {"closed_form_profitable", closed_form},
          {"pass", pass}});
    return kOk;
  }

  auto section = [&](const std::string& title, const Trace& t) {
    out << title << '\n' << render_turn_table(space, t) << capture_line(space, t) << '\n';
    const auto q = payoffs_of(space, params, t);
    for (int n = 1; n <= 3; ++n) {
      out << "  Q^" << n << " = " << symbolic_payoff(space, params, t, n) << " = "
          << fixed(q[n - 1]) << '\n';
    }
    out << '\n';
  };
  out << "gamma = " << used.gamma << ", epsilon = " << used.epsilon << "\n\n";
  section("Play 1: every token follows its time-optimal pursuit or evasion", play);
  section("Play 2: C1 steps to 7 on turn 1, then play resumes", deviation);
  out << "C1 payoff: " << fixed(total_payoff(space, params, deviation, 1)) << " with the detour vs "
      << fixed(total_payoff(space, params, play, 1)) << " without\n";
  out << "threshold (ε/(1-ε))^(1/" << delay << ") = " << fixed(threshold) << '\n';
  out << "deviation profitable for C1: " << (simulated ? "yes" : "no") << '\n';
  out << (pass ? "PASS" : "FAIL") << ": simulated payoffs "
      << (simulated == closed_form ? "agree" : "disagree") << " with gamma > threshold\n";
  return kOk;
}

struct CopNumberFlags {
  bool selfish = false;
  bool verify = false;
};

int cmd_copnumber(const Scenario& sc, Format fmt, const CopNumberFlags& flags, std::ostream& out) {
  const Graph& g = sc.require_graph();
  const StateSpaceOptions options{sc.max_states};
  nlohmann::json result;
  bool consistent = true;
  if (flags.selfish) {
    std::optional<SweepGrid> grid;
    if (sc.grid) grid = resolve_grid(sc, 0);
    const auto report = selfish_cop_number(g, sc.max_cops, flags.verify, grid, options);
    result = to_json(report);
    consistent = !report.verified || report.consistent;
  } else {
    const auto report = cop_number(g, sc.max_cops, options);
    SelfishCopNumberReport plain;
    plain.cop_number = report.cop_number;
    plain.certificate = report;
    result = to_json(plain);
    result.erase("selfish_cop_number");
    result.erase("verified");
  }

  if (fmt == Format::Json) {
    emit(out, "copnumber", sc, result);
  } else {
    out << (flags.selfish ? "selfish cop number: " : "cop number: ");
    if (result["cop_number"].is_null()) {
      out << "> " << sc.max_cops << '\n';
    } else {
      out << result["cop_number"].get<int>() << '\n';
    }
    for (const auto& step : result["certificate"]) {
      out << "  " << step["cops"].get<int>() << " cop(s): T = "
          << (step["max_capture_time"].is_null() ? "inf" : step["max_capture_time"].dump()) << " over "
          << step["states"].get<std::size_t>() << " states\n";
    }
    if (result.contains("verification")) {
      out << "  verification: " << (consistent ? "consistent" : "CONTRADICTION") << '\n';
    }
  }
  return consistent ? kOk : kTheoremFailure;
}

int cmd_sweep(const Scenario& sc, Format fmt, std::ostream& out, std::ostream& err) {
  StateSpace space = make_space(sc);
  const SweepGrid grid = resolve_grid(sc, sc.players);
  std::vector<StateIndex> starts;
  if (auto s0 = optional_s0(sc, space)) starts.push_back(*s0);
  const auto skipped = grid.skipped(sc.players);
  const auto rows = sweep(space, grid, starts, sc.verify_options());

  if (fmt == Format::Json) {
    nlohmann::json list = nlohmann::json::array();
    for (const auto& row : rows) {
      nlohmann::json r = {{"gamma", row.point.gamma},
                          {"epsilon", row.point.epsilon},
                          {"s0", to_string(space.state(row.s0))},
                          {"omega_tilde", row.point.omega_tilde},
                          {"cr_optimal_is_ne", nullptr},
                          {"max_gap", nullptr},
                          {"threat_capture_time", nullptr}};
      if (row.cr_optimal_is_ne) {
        r["cr_optimal_is_ne"] = *row.cr_optimal_is_ne;
        r["max_gap"] = row.max_gap;
      }
      if (row.threat_capture_time) r["threat_capture_time"] = *row.threat_capture_time;
      list.push_back(std::move(r));
    }
    emit(out, "sweep", sc,
         {{"points", grid_points_json(grid.points(sc.players))},
          {"skipped_points", grid_points_json(skipped)},
          {"rows", std::move(list)}});
    return kOk;
  }
  for (const auto& p : skipped) {
    err << "skipped (gamma=" << p.gamma << ", epsilon=" << p.epsilon
        << "): within the boundary margin of gamma = eps/(1-eps)\n";
  }
  out << sweep_csv(space, rows);
  return kOk;
}

struct VerifyFlags {
  std::string replay_file;
  bool equivalence = false;
  std::size_t trials = 100;
  bool no_nash = false;
};

int cmd_verify(const Scenario& sc, Format fmt, const VerifyFlags& flags, std::ostream& out) {
  SuiteOptions options;
  options.verify = sc.verify_options();
  options.include_nash_sweeps = !flags.no_nash;

  if (!flags.replay_file.empty()) {
    std::ifstream in(flags.replay_file);
    if (!in) throw ParseError("cannot open scenario '" + flags.replay_file + "'");
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("replay scenario: ") + e.what());
    }
    const bool holds = replay(j, options);
    if (fmt == Format::Json) {
      emit(out, "verify", sc, {{"replay", j}, {"holds", holds}});
    } else {
      out << (holds ? "PASS" : "FAIL") << ' ' << j.value("check", std::string("?")) << '\n';
    }
    return holds ? kOk : kTheoremFailure;
  }

  const Graph& g = sc.require_graph();
  make_space(sc);  // capacity check before the long run
  const SweepGrid grid = resolve_grid(sc, sc.players);
  const auto reports = theorem_suite(g, sc.players, grid, options);
  bool pass = true;
  nlohmann::json list = nlohmann::json::array();
  for (const auto& r : reports) {
    pass = pass && r.pass();
    list.push_back(to_json(r));
  }
  std::optional<EquivalenceReport> eq;
  if (flags.equivalence) {
    eq = payoff_equivalence_check(g, sc.players, flags.trials, sc.seed, sc.gamma, options.verify);
    pass = pass && eq->pass();
  }

  if (fmt == Format::Json) {
    nlohmann::json result = {{"theorems", std::move(list)},
                             {"skipped_points", grid_points_json(grid.skipped(sc.players))},
                             {"pass", pass}};
    if (eq) result["payoff_equivalence"] = to_json(*eq);
    emit(out, "verify", sc, result);
  } else {
    for (const auto& r : reports) {
      out << (!r.applicable ? "SKIP" : r.pass() ? "PASS" : "FAIL") << ' ' << r.id << " ("
          << r.instances << " instances, " << r.failures << " failures)\n";
      if (r.counterexample) out << "  counterexample: " << r.counterexample->dump() << '\n';
    }
    if (eq) {
      out << (eq->pass() ? "PASS" : "FAIL") << " payoff-equivalence (" << eq->trials
          << " random profiles, " << eq->mismatches << " mismatches)\n";
    }
  }
  return pass ? kOk : kTheoremFailure;
}

struct SimulateFlags {
  std::string profile = "threat";
  int deviator = 0;
  std::string plan;
  std::size_t turn_cap = kDefaultTurnCap;
};

int cmd_simulate(const Scenario& sc, Format fmt, const SimulateFlags& flags, std::ostream& out,
                 std::ostream& err) {
  const GameParams params = sc.params();
  StateSpace space = make_space(sc);
  const DeviationPlan plan = flags.plan.empty() ? DeviationPlan{} : parse_plan(flags.plan);
  if (!plan.empty() && (flags.deviator < 1 || flags.deviator > space.players())) {
    throw ValidationError("--plan needs --deviator in 1.." + std::to_string(space.players()));
  }
  const SolveOptions solve = sc.verify_options().solve;

  Trace trace;
  auto positional = [&](const PositionalProfile& p) {
    trace = run_automaton(space, detail::PositionalAutomaton{p}, require_s0(sc, space), 0,
                          flags.deviator, plan, flags.turn_cap);
  };
  if (flags.profile == "threat" || flags.profile == "capturing-threat") {
    const auto aux = solve_aux_games(space, params, solve);
    const ThreatProfile threat = flags.profile == "threat" ? build_threat_profile(space, aux)
                                                           : build_capturing_threat_ne(space, aux);
    trace = run_automaton(space, threat, require_s0(sc, space), kCooperative, flags.deviator, plan,
                          flags.turn_cap);
  } else if (flags.profile == "cr-optimal") {
    positional(solve_cr(space).optimal);
  } else if (flags.profile == "independent") {
    positional(independent_pursuit_profile(space));
  } else if (flags.profile == "nash") {
    NashSolveOptions options;
    options.tol = sc.tol;
    options.gap_tol = sc.gap_tol;
    options.max_sweeps = sc.max_sweeps;
    const auto ne = solve_positional_ne(space, params, options);
    if (ne.report.status != NashStatus::Converged) {
      err << "positional NE search: " << to_string(ne.report.status) << '\n';
      return kNonConvergence;
    }
    positional(ne.profile);
  } else if (flags.profile == "noncapturing") {
    auto built = build_noncapturing_ne(space, params, optional_s0(sc, space), sc.verify_options());
    if (!built) throw PreconditionError("a lone cop captures from every start on this graph");
    trace = run_automaton(space, built->profile, built->profile.s0(), kWaiting, flags.deviator, plan,
                          flags.turn_cap);
  } else {
    throw ValidationError("unknown profile '" + flags.profile + "'");
  }

  if (fmt == Format::Json) {
    emit(out, "simulate", sc,
         {{"profile", flags.profile},
          {"deviator", flags.deviator},
          {"plan", plan},
          {"trace", trace_summary(space, params, trace)}});
    return kOk;
  }
  out << render_turn_table(space, trace) << capture_line(space, trace) << '\n';
  print_payoffs(out, space, params, trace);
  return kOk;
}

}  // namespace

// --- Scenario -------------------------------------------------------------

const Graph& Scenario::require_graph() const {
  if (!graph) throw ValidationError("a graph is required (--graph FILE, --graph-name or a scenario)");
  return *graph;
}

GameParams Scenario::params() const {
  GameParams p;
  p.players = players;
  p.gamma = parse_real(gamma, "gamma");
  p.epsilon = split_equivalent ? 0.0 : parse_real(epsilon, "epsilon");
  p.mode = split_equivalent ? EpsilonMode::SplitEquivalent : EpsilonMode::Fixed;
  p.allow_extended_epsilon = allow_extended_epsilon;
  validate_params(p);
  return p;
}

ExactParams Scenario::exact_params() const {
  params();
  ExactParams e;
  e.players = players;
  e.gamma = parse_exact(gamma, "gamma");
  e.mode = split_equivalent ? EpsilonMode::SplitEquivalent : EpsilonMode::Fixed;
  e.epsilon = split_equivalent ? Rational(0) : parse_exact(epsilon, "epsilon");
  return e;
}

VerifyOptions Scenario::verify_options() const {
  VerifyOptions v;
  v.gap_tol = gap_tol;
  v.solve.tol = tol;
  v.solve.max_sweeps = max_sweeps;
  return v;
}

nlohmann::json Scenario::to_json() const {
  nlohmann::json j = {{"graph", graph ? nlohmann::json(to_edge_list(*graph)) : nlohmann::json(nullptr)},
                      {"graph_source", graph_source},
                      {"players", players},
                      {"gamma", parse_real(gamma, "gamma")},
                      {"split_equivalent", split_equivalent},
                      {"allow_extended_epsilon", allow_extended_epsilon},
                      {"s0", s0 ? nlohmann::json(*s0) : nlohmann::json(nullptr)},
                      {"tol", tol},
                      {"gap_tol", gap_tol},
                      {"max_sweeps", max_sweeps},
                      {"max_states", max_states},
                      {"grid", grid ? nlohmann::json(*grid) : nlohmann::json(nullptr)},
                      {"max_cops", max_cops},
                      {"seed", seed}};
  j["epsilon"] = split_equivalent ? nlohmann::json(nullptr) : nlohmann::json(parse_real(epsilon, "epsilon"));
  return j;
}

Scenario parse_scenario(const nlohmann::json& j, const std::string& base_dir) {
  if (!j.is_object()) throw ParseError("a scenario must be a JSON object");
  static const std::vector<std::string> known = {
      "graph",   "graph_file", "graph_name", "graph_source", "players",  "n",
      "gamma",   "epsilon",    "split_equivalent", "allow_extended_epsilon", "s0",
      "tol",     "gap_tol",    "max_sweeps", "max_states", "grid", "max_cops", "seed"};
  for (const auto& [key, value] : j.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw ParseError("unknown scenario key '" + key + "'");
    }
  }
  Scenario sc;
  try {
    const int sources = j.contains("graph") + j.contains("graph_file") + j.contains("graph_name");
    if (sources > 1) throw ValidationError("give only one of graph, graph_file, graph_name");
    if (j.contains("graph") && !j["graph"].is_null()) {
      sc.graph = parse_graph(j["graph"].get<std::string>());
      sc.graph_source = "inline";
    } else if (j.contains("graph_file")) {
      std::filesystem::path path = j["graph_file"].get<std::string>();
      if (path.is_relative()) path = std::filesystem::path(base_dir) / path;
      sc.graph = load_graph_file(path.string());
      sc.graph_source = "file:" + path.string();
    } else if (j.contains("graph_name")) {
      const auto name = j["graph_name"].get<std::string>();
      sc.graph = catalog::by_name(name);
      sc.graph_source = "builtin:" + name;
    }
    if (j.contains("players") && j.contains("n")) throw ValidationError("give players or n, not both");
    if (j.contains("players")) sc.players = j["players"].get<int>();
    if (j.contains("n")) sc.players = j["n"].get<int>();
    if (j.contains("gamma")) sc.gamma = number_text(j, "gamma");
    if (j.contains("epsilon") && !j["epsilon"].is_null()) sc.epsilon = number_text(j, "epsilon");
    sc.split_equivalent = j.value("split_equivalent", false);
    sc.allow_extended_epsilon = j.value("allow_extended_epsilon", false);
    if (j.contains("s0") && !j["s0"].is_null()) {
      if (j["s0"].is_array()) {
        std::string text;
        for (const auto& v : j["s0"]) text += (text.empty() ? "" : ",") + std::to_string(v.get<int>());
        sc.s0 = text;
      } else {
        sc.s0 = j["s0"].get<std::string>();
      }
    }
    sc.tol = j.value("tol", sc.tol);
    sc.gap_tol = j.value("gap_tol", sc.gap_tol);
    sc.max_sweeps = j.value("max_sweeps", sc.max_sweeps);
    sc.max_states = j.value("max_states", sc.max_states);
    if (j.contains("grid") && !j["grid"].is_null()) sc.grid = j["grid"].get<std::string>();
    sc.max_cops = j.value("max_cops", sc.max_cops);
    sc.seed = j.value("seed", sc.seed);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("scenario: ") + e.what());
  }
  return sc;
}

Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open scenario '" + path + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("scenario '" + path + "': " + e.what());
  }
  return parse_scenario(j, std::filesystem::path(path).parent_path().string());
}

// --- command line ---------------------------------------------------------

namespace {

struct Inputs {
  std::string scenario_file;
  std::string graph_file;
  std::string graph_name;
  int players = 0;
  std::string gamma;
  std::string epsilon;
  bool split_equivalent = false;
  bool allow_extended_epsilon = false;
  std::string s0;
  std::string grid;
  double tol = 0.0;
  double gap_tol = 0.0;
  std::size_t max_sweeps = 0;
  std::uint64_t max_states = 0;
  int max_cops = 0;
  std::uint64_t seed = 0;
  bool json = false;
  bool csv = false;
  bool table = false;
};

struct Registered {
  CLI::App* app = nullptr;
  CLI::Option* players = nullptr;
  CLI::Option* tol = nullptr;
  CLI::Option* gap_tol = nullptr;
  CLI::Option* max_sweeps = nullptr;
  CLI::Option* max_states = nullptr;
  CLI::Option* max_cops = nullptr;
  CLI::Option* seed = nullptr;
};

Registered add_common(CLI::App* app, Inputs& in) {
  Registered r{app};
  app->add_option("--scenario", in.scenario_file, "JSON scenario file");
  auto* graph = app->add_option("--graph", in.graph_file, "edge-list file: 'n m' then m lines 'u v'");
  app->add_option("--graph-name", in.graph_name, "built-in graph: Pn, Cn, Kn, Sn, petersen, tree9")
      ->excludes(graph);
  r.players = app->add_option("--n", in.players, "number of players N (N-1 cops and a robber)");
  auto* eps = app->add_option("--epsilon", in.epsilon, "non-capturing share");
  app->add_option("--gamma", in.gamma, "discount factor in (0,1)");
  app->add_flag("--split-equivalent", in.split_equivalent, "every cop gets 1/(N-1) at a capture")
      ->excludes(eps);
  app->add_flag("--allow-extended-epsilon", in.allow_extended_epsilon, "accept epsilon up to 1");
  app->add_option("--s0", in.s0, "initial state \"x1,...,xN,p\"");
  app->add_option("--grid", in.grid, "\"g1,g2;e1,e2\"");
  r.tol = app->add_option("--tol", in.tol, "value-iteration residual");
  r.gap_tol = app->add_option("--gap-tol", in.gap_tol, "accepted best-response gain");
  r.max_sweeps = app->add_option("--max-sweeps", in.max_sweeps, "sweep cap (0 = automatic)");
  r.max_states = app->add_option("--max-states", in.max_states, "state-space budget");
  r.max_cops = app->add_option("--max-cops", in.max_cops, "largest cop count tried");
  r.seed = app->add_option("--seed", in.seed, "seed for random-profile batteries");
  auto* json = app->add_flag("--json", in.json, "JSON report");
  auto* csv = app->add_flag("--csv", in.csv, "CSV rows")->excludes(json);
  app->add_flag("--table", in.table, "plain-text report")->excludes(json)->excludes(csv);
  return r;
}

Scenario resolve(const Inputs& in, const Registered& r) {
  Scenario sc = in.scenario_file.empty() ? Scenario{} : load_scenario_file(in.scenario_file);
  if (!in.graph_file.empty()) {
    sc.graph = load_graph_file(in.graph_file);
    sc.graph_source = "file:" + in.graph_file;
  } else if (!in.graph_name.empty()) {
    sc.graph = catalog::by_name(in.graph_name);
    sc.graph_source = "builtin:" + in.graph_name;
  }
  if (r.players->count()) sc.players = in.players;
  if (!in.gamma.empty()) sc.gamma = in.gamma;
  if (!in.epsilon.empty()) {
    sc.epsilon = in.epsilon;
    sc.split_equivalent = false;
  }
  if (in.split_equivalent) sc.split_equivalent = true;
  if (in.allow_extended_epsilon) sc.allow_extended_epsilon = true;
  if (!in.s0.empty()) sc.s0 = in.s0;
  if (!in.grid.empty()) sc.grid = in.grid;
  if (r.tol->count()) sc.tol = in.tol;
  if (r.gap_tol->count()) sc.gap_tol = in.gap_tol;
  if (r.max_sweeps->count()) sc.max_sweeps = in.max_sweeps;
  if (r.max_states->count()) sc.max_states = in.max_states;
  if (r.max_cops->count()) sc.max_cops = in.max_cops;
  if (r.seed->count()) sc.seed = in.seed;
  if (!(sc.tol > 0.0) || !(sc.gap_tol >= 0.0)) throw ValidationError("tolerances must be positive");
  return sc;
}

Format format_of(const Inputs& in, Format fallback) {
  if (in.json) return Format::Json;
  if (in.csv) return Format::Csv;
  if (in.table) return Format::Table;
  return fallback;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Equilibria of N-player cops-and-robber pursuit games on graphs", "scar"};
  app.require_subcommand(1);
  Inputs in;

  auto* solve = app.add_subcommand("solve", "positional NE search from s0, threat profile fallback");
  auto solve_r = add_common(solve, in);
  SolveFlags solve_flags;
  solve->add_flag("--no-fallback", solve_flags.no_fallback, "exit 4 instead of falling back");

  auto* example = app.add_subcommand("reproduce-example", "delayed-capture example on the tree9 graph");
  auto example_r = add_common(example, in);

  auto* copnum = app.add_subcommand("copnumber", "cop number with a per-K certificate");
  auto copnum_r = add_common(copnum, in);
  CopNumberFlags copnum_flags;
  copnum->add_flag("--selfish", copnum_flags.selfish, "selfish cop number");
  copnum->add_flag("--verify", copnum_flags.verify, "sample the NE existence checks");

  auto* sweep_cmd = app.add_subcommand("sweep", "CR-optimal NE gaps and threat capture times over a grid");
  auto sweep_r = add_common(sweep_cmd, in);

  auto* verify = app.add_subcommand("verify", "run every applicable equilibrium check on a graph");
  auto verify_r = add_common(verify, in);
  VerifyFlags verify_flags;
  verify->add_option("--replay", verify_flags.replay_file, "re-check a counterexample scenario");
  verify->add_flag("--equivalence", verify_flags.equivalence, "also run the random-profile payoff battery");
  verify->add_option("--trials", verify_flags.trials, "random profiles in the battery");
  verify->add_flag("--no-nash", verify_flags.no_nash, "skip the positional NE searches");

  auto* simulate = app.add_subcommand("simulate", "play a profile from s0");
  auto simulate_r = add_common(simulate, in);
  SimulateFlags sim_flags;
  simulate->add_option("--profile", sim_flags.profile, "threat, capturing-threat, cr-optimal, nash, independent, noncapturing")
      ->check(CLI::IsMember({"threat", "capturing-threat", "cr-optimal", "nash", "independent", "noncapturing"}));
  simulate->add_option("--deviator", sim_flags.deviator, "player forced off the profile");
  simulate->add_option("--plan", sim_flags.plan, "\"turn=vertex,...\" moves of the deviator");
  simulate->add_option("--turn-cap", sim_flags.turn_cap, "turn limit");

  std::vector<const char*> argv{"scar"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kValidation;
  }

  try {
    if (solve->parsed()) return cmd_solve(resolve(in, solve_r), format_of(in, Format::Json), solve_flags, out, err);
    if (example->parsed()) return cmd_reproduce_example(resolve(in, example_r), format_of(in, Format::Table), out);
    if (copnum->parsed()) return cmd_copnumber(resolve(in, copnum_r), format_of(in, Format::Json), copnum_flags, out);
    if (sweep_cmd->parsed()) return cmd_sweep(resolve(in, sweep_r), format_of(in, Format::Csv), out, err);
    if (verify->parsed()) return cmd_verify(resolve(in, verify_r), format_of(in, Format::Json), verify_flags, out);
    if (simulate->parsed()) return cmd_simulate(resolve(in, simulate_r), format_of(in, Format::Json), sim_flags, out, err);
  } catch (const CapacityError& e) {
    err << "capacity: " << e.what() << '\n';
    return kCapacity;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  }
  return kValidation;
}

}  // namespace scar::cli
