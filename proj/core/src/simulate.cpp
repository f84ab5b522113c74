#include "scar/simulate.hpp"

#include <algorithm>
#include <sstream>

namespace scar {

std::string to_string(Termination t) {
  switch (t) {
    case Termination::Captured: return "captured";
    case Termination::CycleCertified: return "cycle-certified";
    case Termination::TurnCapHit: return "turn-cap-hit";
  }
  return "unknown";
}

std::vector<StateIndex> Trace::states() const {
  std::vector<StateIndex> out{initial};
  for (const auto& step : steps) out.push_back(step.state);
  return out;
}

std::vector<Vertex> Trace::positions(const StateSpace& space, int player) const {
  std::vector<Vertex> out;
  for (StateIndex s : states()) out.push_back(space.position(s, player));
  return out;
}

Trace run(const StateSpace& space, const PositionalProfile& profile, StateIndex s0,
          std::size_t turn_cap) {
  return run_automaton(space, detail::PositionalAutomaton{profile}, s0, 0, 0, {}, turn_cap);
}

Trace run(const StateSpace& space, const ThreatProfile& threat, StateIndex s0,
          std::size_t turn_cap) {
  return run_automaton(space, threat, s0, kCooperative, 0, {}, turn_cap);
}

Trace run_with_forced_deviation(const StateSpace& space, const ThreatProfile& threat, int deviator,
                                const DeviationPlan& plan, StateIndex s0, std::size_t turn_cap) {
  return run_automaton(space, threat, s0, kCooperative, deviator, plan, turn_cap);
}

Trace run_with_forced_deviation(const StateSpace& space, const PositionalProfile& profile,
                                int deviator, const DeviationPlan& plan, StateIndex s0,
                                std::size_t turn_cap) {
  return run_automaton(space, detail::PositionalAutomaton{profile}, s0, 0, deviator, plan,
                       turn_cap);
}

namespace {

void require_finished(const Trace& trace) {
  if (trace.termination == Termination::TurnCapHit) {
    throw PreconditionError("payoffs are undefined for a play cut off at the turn cap");
  }
}

}  // namespace

double total_payoff(const StateSpace&, const GameParams& params, const Trace& trace, int n) {
  require_finished(trace);
  return discounted_payoff(params, trace.capture_time, trace.capturing_set, n);
}

std::vector<double> payoffs_of(const StateSpace& space, const GameParams& params,
                               const Trace& trace) {
  std::vector<double> out;
  for (int n = 1; n <= space.players(); ++n) out.push_back(total_payoff(space, params, trace, n));
  return out;
}

std::vector<Rational> payoffs_of_exact(const StateSpace& space, const ExactParams& params,
                                       const Trace& trace) {
  require_finished(trace);
  std::vector<Rational> out;
  for (int n = 1; n <= space.players(); ++n) {
    out.push_back(discounted_payoff_exact(params, trace.capture_time, trace.capturing_set, n));
  }
  return out;
}

nlohmann::json to_json(const StateSpace& space, const Trace& trace) {
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& step : trace.steps) {
    steps.push_back({{"t", step.t},
                     {"mover", step.mover},
                     {"action", step.action},
                     {"state", to_string(space.state(step.state))},
                     {"mode", step.mode}});
  }
  nlohmann::json cops = nlohmann::json::array();
  for (int i = 1; i <= space.cop_count(); ++i) {
    if ((trace.capturing_set >> (i - 1)) & 1U) cops.push_back(i);
  }
  nlohmann::json out = {{"initial", to_string(space.state(trace.initial))},
                        {"initial_mode", trace.initial_mode},
                        {"steps", std::move(steps)},
                        {"termination", to_string(trace.termination)},
                        {"capture_time", nullptr},
                        {"capturing_cops", std::move(cops)},
                        {"cycle_start", nullptr}};
  if (trace.capture_time) out["capture_time"] = *trace.capture_time;
  if (trace.cycle_start) out["cycle_start"] = *trace.cycle_start;
  return out;
}

std::string render_turn_table(const StateSpace& space, const Trace& trace) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> header{"Turn"};
  for (std::size_t t = 0; t <= trace.steps.size(); ++t) header.push_back(std::to_string(t));
  rows.push_back(std::move(header));
  for (int n = 1; n <= space.players(); ++n) {
    std::vector<std::string> row{n == space.robber() ? "R vertex" : "C" + std::to_string(n) + " vertex"};
    for (Vertex v : trace.positions(space, n)) row.push_back(std::to_string(v));
    rows.push_back(std::move(row));
  }

  std::vector<std::size_t> width(rows.front().size(), 0);
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  std::ostringstream out;
  for (const auto& row : rows) {
    out << row[0] << std::string(width[0] - row[0].size(), ' ');
    for (std::size_t c = 1; c < row.size(); ++c) {
      out << " | " << std::string(width[c] - row[c].size(), ' ') << row[c];
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace scar
