#include "scar/state_space.hpp"

#include <algorithm>
#include <sstream>

#include "scar/errors.hpp"

namespace scar {

std::string to_string(const GameState& s) {
  if (s.is_terminal()) return "tau";
  std::ostringstream out;
  out << '(';
  for (Vertex x : s.positions) out << x << ',';
  out << s.mover << ')';
  return out.str();
}

GameState parse_game_state(const std::string& text) {
  std::string cleaned;
  for (char c : text) cleaned += (c == '(' || c == ')' || c == ',') ? ' ' : c;
  std::istringstream in(cleaned);
  std::vector<int> values;
  std::string token;
  while (in >> token) {
    try {
      std::size_t used = 0;
      values.push_back(std::stoi(token, &used));
      if (used != token.size()) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      throw ParseError("state '" + text + "': '" + token + "' is not an integer");
    }
  }
  if (values.size() < 3) {
    throw ParseError("state '" + text + "': expected at least two positions and a mover");
  }
  GameState s;
  s.mover = values.back();
  values.pop_back();
  s.positions = std::move(values);
  return s;
}

StateSpace::StateSpace(Graph graph, int players, StateSpaceOptions options)
    : graph_(std::move(graph)), players_(players), vertices_(graph_.vertex_count()) {
  if (players < 2) {
    throw ValidationError("player count must be at least 2, got " + std::to_string(players));
  }
  if (players > 32) throw CapacityError("at most 31 cops are supported");
  std::uint64_t positions = 1;
  const std::uint64_t cap = std::min<std::uint64_t>(options.max_states, 0xFFFFFFF0ULL);
  for (int i = 0; i < players; ++i) {
    positions *= static_cast<std::uint64_t>(vertices_);
    if (positions * static_cast<std::uint64_t>(players) + 1 > cap) {
      throw CapacityError("state space for N=" + std::to_string(players) + " on " +
                          std::to_string(vertices_) + " vertices exceeds the budget of " +
                          std::to_string(options.max_states) + " states");
    }
  }
  terminal_ = static_cast<StateIndex>(positions * static_cast<std::uint64_t>(players));

  stride_.assign(static_cast<std::size_t>(players) + 1, 1);
  for (int n = players - 1; n >= 1; --n) stride_[n] = stride_[n + 1] * vertices_;

  capture_mask_.assign(positions, 0);
  for (std::uint64_t code = 0; code < positions; ++code) {
    const auto robber_at = static_cast<std::int64_t>(code % vertices_);
    CopSet mask = 0;
    for (int i = 1; i < players; ++i) {
      if (static_cast<std::int64_t>(code) / stride_[i] % vertices_ == robber_at) {
        mask |= CopSet{1} << (i - 1);
      }
    }
    capture_mask_[code] = mask;
  }
}

StateIndex StateSpace::index(const GameState& s) const {
  if (s.is_terminal()) return terminal_;
  if (static_cast<int>(s.positions.size()) != players_) {
    throw ValidationError("state " + to_string(s) + " has " + std::to_string(s.positions.size()) +
                          " positions, expected " + std::to_string(players_));
  }
  if (s.mover < 1 || s.mover > players_) {
    throw ValidationError("state " + to_string(s) + ": mover must be in 1.." +
                          std::to_string(players_));
  }
  std::int64_t code = 0;
  for (Vertex x : s.positions) {
    if (!graph_.contains(x)) {
      throw ValidationError("state " + to_string(s) + ": vertex " + std::to_string(x) +
                            " out of range");
    }
    code = code * vertices_ + (x - 1);
  }
  return static_cast<StateIndex>(code * players_ + (s.mover - 1));
}

GameState StateSpace::state(StateIndex s) const {
  if (s > terminal_) throw ValidationError("state index out of range");
  if (s == terminal_) return GameState::terminal();
  GameState out;
  out.mover = mover(s);
  out.positions.resize(static_cast<std::size_t>(players_));
  for (int n = 1; n <= players_; ++n) out.positions[n - 1] = position(s, n);
  return out;
}

Classification StateSpace::classify(StateIndex s) const {
  if (s == terminal_) return {StateClass::Terminal, 0};
  CopSet mask = capturing_set(s);
  return {mask ? StateClass::Capture : StateClass::NonCapture, mask};
}

std::vector<Vertex> StateSpace::actions(StateIndex s, int player) const {
  if (player < 1 || player > players_) {
    throw ValidationError("player " + std::to_string(player) + " out of range 1.." +
                          std::to_string(players_));
  }
  if (!is_noncapture(s)) return {kNullMove};
  if (mover(s) != player) return {position(s, player)};
  auto nbhd = graph_.closed_neighborhood(position(s, player));
  return {nbhd.begin(), nbhd.end()};
}

StateIndex StateSpace::transition(StateIndex s, Vertex action) const {
  if (s > terminal_) throw ValidationError("state index out of range");
  if (!is_noncapture(s)) {
    if (action != kNullMove) {
      throw IllegalActionError("state " + to_string(state(s)) + " only admits the null move");
    }
    return terminal_;
  }
  auto legal = mover_actions(s);
  if (!std::binary_search(legal.begin(), legal.end(), action)) {
    throw IllegalActionError("player " + std::to_string(mover(s)) + " cannot move to " +
                             std::to_string(action) + " from state " + to_string(state(s)));
  }
  return successor(s, action);
}

GameState StateSpace::transition(const GameState& s, Vertex action) const {
  return state(transition(index(s), action));
}

}  // namespace scar
