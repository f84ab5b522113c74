#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "scar/graph.hpp"

namespace scar {

/// Dense index of a game state. The terminal state τ is the last index.
using StateIndex = std::uint32_t;

/// The null move λ, the only action available at capture states and at τ.
inline constexpr Vertex kNullMove = 0;

/// Bitmask over cops: bit (i-1) set iff cop i shares the robber's vertex.
using CopSet = std::uint32_t;

/// (x¹,…,x^N, p), or the terminal marker when `positions` is empty.
/// Players are numbered 1..N; players 1..N-1 are cops and N is the robber.
struct GameState {
  std::vector<Vertex> positions;
  int mover = 0;

  static GameState terminal() { return {}; }
  bool is_terminal() const { return positions.empty(); }

  friend bool operator==(const GameState&, const GameState&) = default;
};

/// "(6,1,4,1)" or "tau".
std::string to_string(const GameState& s);

/// Parses "x1,...,xN,p" (parentheses and spaces optional).
GameState parse_game_state(const std::string& text);

enum class StateClass { NonCapture, Capture, Terminal };

struct Classification {
  StateClass kind = StateClass::NonCapture;
  CopSet capturing_set = 0;

  friend bool operator==(const Classification&, const Classification&) = default;
};

struct StateSpaceOptions {
  std::uint64_t max_states = 50'000'000;
};

/// All states of the N-player game on a graph, densely indexed.
///
/// Layout: idx = ((…((x¹-1)·|V| + (x²-1))…)·|V| + (x^N-1))·N + (p-1), and τ is
/// the last index. Immutable once built.
class StateSpace {
 public:
  StateSpace(Graph graph, int players, StateSpaceOptions options = {});

  const Graph& graph() const { return graph_; }
  int players() const { return players_; }
  int robber() const { return players_; }
  int cop_count() const { return players_ - 1; }

  /// N·|V|^N + 1.
  std::size_t size() const { return static_cast<std::size_t>(terminal_) + 1; }
  StateIndex terminal() const { return terminal_; }

  StateIndex index(const GameState& s) const;
  GameState state(StateIndex s) const;

  bool is_terminal(StateIndex s) const { return s == terminal_; }
  /// Mover p of a non-terminal state; 0 for τ.
  int mover(StateIndex s) const {
    return s == terminal_ ? 0 : static_cast<int>(s % players_) + 1;
  }
  Vertex position(StateIndex s, int player) const {
    return static_cast<Vertex>((s / players_) / stride_[player] % vertices_) + 1;
  }
  CopSet capturing_set(StateIndex s) const {
    return s == terminal_ ? 0 : capture_mask_[s / players_];
  }
  bool is_capture(StateIndex s) const { return capturing_set(s) != 0; }
  /// In S_NC: non-terminal and no cop on the robber's vertex.
  bool is_noncapture(StateIndex s) const { return s != terminal_ && !is_capture(s); }

  Classification classify(StateIndex s) const;

  /// A^n(s): N[x^n] for the mover at a non-capture state, {x^n} for the other
  /// players there, {λ} at capture states and τ.
  std::vector<Vertex> actions(StateIndex s, int player) const;

  /// The mover's action set at a non-capture state; empty elsewhere.
  std::span<const Vertex> mover_actions(StateIndex s) const {
    if (!is_noncapture(s)) return {};
    return graph_.closed_neighborhood(position(s, mover(s)));
  }

  /// T(s, a). Throws IllegalActionError if `a` is not in the mover's action set.
  StateIndex transition(StateIndex s, Vertex action) const;
  GameState transition(const GameState& s, Vertex action) const;

  /// T(s, a) for a known-legal move at a non-capture state.
  StateIndex successor(StateIndex s, Vertex action) const {
    const int p = mover(s);
    const auto code = static_cast<std::int64_t>(s / players_) +
                      static_cast<std::int64_t>(action - position(s, p)) * stride_[p];
    const int next = p == players_ ? 0 : p;
    return static_cast<StateIndex>(code * players_ + next);
  }

  /// Calls f(pred, action) for every non-capture state `pred` and action with
  /// T(pred, action) == s. τ has no such predecessors.
  template <typename F>
  void for_each_predecessor(StateIndex s, F&& f) const {
    if (s == terminal_) return;
    const int m = mover(s);
    const int p = m == 1 ? players_ : m - 1;
    const auto code = static_cast<std::int64_t>(s / players_);
    const Vertex here = position(s, p);
    for (Vertex from : graph_.closed_neighborhood(here)) {
      const auto pred_code = code + static_cast<std::int64_t>(from - here) * stride_[p];
      const auto pred = static_cast<StateIndex>(pred_code * players_ + (p - 1));
      if (capture_mask_[static_cast<std::size_t>(pred_code)] == 0) f(pred, here);
    }
  }

  /// Number of position tuples |V|^N.
  std::size_t position_count() const { return capture_mask_.size(); }

 private:
  Graph graph_;
  int players_;
  std::int64_t vertices_;
  std::vector<std::int64_t> stride_;  // stride_[n] = |V|^(N-n), n in 1..N
  std::vector<CopSet> capture_mask_;  // by position code
  StateIndex terminal_ = 0;
};

}  // namespace scar
