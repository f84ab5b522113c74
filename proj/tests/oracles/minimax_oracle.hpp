#pragma once

// Reference solvers used only by tests. They share nothing with the
// production solvers beyond the Graph type: states are packed with their own
// encoding and explored by memoised recursion or naive sweeps.

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "scar/graph.hpp"
#include "scar/state_space.hpp"

namespace scar::oracle {

/// Depth-bounded minimax with memoisation over (state, depth). A state is a
/// tuple of N positions plus the mover.
class MinimaxCaptureOracle {
 public:
  MinimaxCaptureOracle(const Graph& g, int players) : g_(g), players_(players) {}

  /// Optimal capture time, nullopt for a robber win. `limit` bounds the
  /// search depth; the iteration stops earlier once the winning region
  /// stops growing.
  std::optional<int> capture_time(const std::vector<Vertex>& positions, int mover) {
    ensure_solved();
    auto it = time_.find(pack(positions, mover));
    return it == time_.end() ? std::nullopt : std::optional<int>(it->second);
  }

  /// Minimum number of cop tokens winning from every start, up to max_cops.
  static std::optional<int> cop_number(const Graph& g, int max_cops) {
    for (int k = 1; k <= max_cops; ++k) {
      MinimaxCaptureOracle oracle(g, k + 1);
      if (oracle.robber_escapes_somewhere() == false) return k;
    }
    return std::nullopt;
  }

  bool robber_escapes_somewhere() {
    ensure_solved();
    return time_.size() != all_states().size();
  }

 private:
  using Key = std::uint64_t;

  Key pack(const std::vector<Vertex>& pos, int mover) const {
    Key k = static_cast<Key>(mover);
    for (Vertex x : pos) k = k * 64 + static_cast<Key>(x);
    return k;
  }

  bool captured(const std::vector<Vertex>& pos) const {
    for (int i = 0; i + 1 < players_; ++i)
      if (pos[i] == pos.back()) return true;
    return false;
  }

  // Can the cops force a capture within `depth` turns?
  bool wins_within(std::vector<Vertex>& pos, int mover, int depth) {
    if (captured(pos)) return true;
    if (depth == 0) return false;
    Key key = pack(pos, mover) * 1024 + static_cast<Key>(depth);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    const int next = mover == players_ ? 1 : mover + 1;
    const Vertex here = pos[mover - 1];
    std::vector<Vertex> options{here};
    for (Vertex w : g_.neighbors(here)) options.push_back(w);
    const bool cop_turn = mover < players_;
    bool result = !cop_turn;
    for (Vertex a : options) {
      pos[mover - 1] = a;
      bool child = wins_within(pos, next, depth - 1);
      pos[mover - 1] = here;
      if (cop_turn && child) {
        result = true;
        break;
      }
      if (!cop_turn && !child) {
        result = false;
        break;
      }
    }
    memo_.emplace(key, result);
    return result;
  }

  std::vector<std::pair<std::vector<Vertex>, int>> all_states() const {
    std::vector<std::pair<std::vector<Vertex>, int>> out;
    std::vector<Vertex> pos(static_cast<std::size_t>(players_), 1);
    while (true) {
      for (int m = 1; m <= players_; ++m) out.emplace_back(pos, m);
      int i = players_ - 1;
      while (i >= 0 && pos[i] == g_.vertex_count()) pos[i--] = 1;
      if (i < 0) break;
      ++pos[i];
    }
    return out;
  }

  void ensure_solved() {
    if (solved_) return;
    solved_ = true;
    auto states = all_states();
    std::size_t winning_before = 0;
    for (int depth = 0; depth < 1000; ++depth) {
      std::size_t winning = 0;
      for (auto& [pos, mover] : states) {
        auto p = pos;
        if (wins_within(p, mover, depth)) {
          ++winning;
          time_.try_emplace(pack(pos, mover), depth);
        }
      }
      if (depth > 0 && winning == winning_before) break;
      winning_before = winning;
    }
    memo_.clear();
  }

  const Graph& g_;
  int players_;
  bool solved_ = false;
  std::unordered_map<Key, bool> memo_;
  std::unordered_map<Key, int> time_;
};

/// Jacobi sweeps of the capture-time equations starting from ∞ everywhere
/// off S_C, until nothing changes. Uses the production StateSpace only for
/// enumeration and transitions.
inline std::vector<std::uint32_t> naive_sweep_capture_times(const StateSpace& space) {
  constexpr std::uint32_t inf = UINT32_MAX;
  std::vector<std::uint32_t> t(space.size(), inf);
  for (StateIndex s = 0; s < space.terminal(); ++s)
    if (space.is_capture(s)) t[s] = 0;
  bool changed = true;
  while (changed) {
    changed = false;
    auto next = t;
    for (StateIndex s = 0; s < space.terminal(); ++s) {
      if (!space.is_noncapture(s)) continue;
      const bool cop_turn = space.mover(s) != space.robber();
      std::uint32_t best = cop_turn ? inf : 0;
      for (Vertex a : space.actions(s, space.mover(s))) {
        std::uint32_t v = t[space.transition(s, a)];
        best = cop_turn ? std::min(best, v) : std::max(best, v);
      }
      std::uint32_t value = best == inf ? inf : best + 1;
      if (value != next[s]) {
        next[s] = value;
        changed = true;
      }
    }
    t.swap(next);
  }
  return t;
}

}  // namespace scar::oracle
