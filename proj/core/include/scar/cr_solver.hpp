#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "scar/profile.hpp"
#include "scar/state_space.hpp"
#include "scar/zero_sum.hpp"

namespace scar {

/// Optimal capture time of the modified Cops-and-Robbers game, in which one
/// cop player moves all N-1 cop tokens (each on its own turn) against the
/// robber. kNever marks states the robber escapes forever.
struct CaptureTimeTable {
  std::vector<std::uint32_t> time;

  std::uint32_t operator[](StateIndex s) const { return time[s]; }
  bool finite(StateIndex s) const { return time[s] != kNever; }
};

/// Least fixpoint of T(S_C)=0, T(s)=1+min (cop turn) / 1+max (robber turn),
/// computed by backward labelling with per-state successor counters.
/// The τ entry is kNever.
CaptureTimeTable exact_capture_times(const StateSpace& space);

/// T_N(G) = max over S_NC; nullopt when some state is never captured.
std::optional<std::uint32_t> t_n_max(const StateSpace& space, const CaptureTimeTable& table);

/// Time-optimal positional strategies: cops take the first successor with
/// minimum T, the robber the first with maximum T (kNever counts as largest).
PositionalProfile cr_optimal_profile(const StateSpace& space, const CaptureTimeTable& table);

/// The one-cop game on the same graph, for projecting an N-player state onto
/// the duel between a single cop and the robber.
class DuelTable {
 public:
  explicit DuelTable(const Graph& g);

  const StateSpace& space() const { return space_; }
  const CaptureTimeTable& table() const { return table_; }

  /// Optimal capture time of cop k alone against the robber from s, with the
  /// mover of s mapped to the cop if it is any cop and to the robber otherwise.
  std::uint32_t time(const StateSpace& big, StateIndex s, int k) const;
  /// Canonical one-cop CR-optimal move of cop k toward the robber.
  Vertex cop_move(const StateSpace& big, StateIndex s, int k) const;
  /// Canonical one-cop CR-optimal evasion of the robber from cop k.
  Vertex robber_move(const StateSpace& big, StateIndex s, int k) const;
  /// True when the robber escapes a lone cop from (x, y) with the cop to move.
  bool robber_escapes(Vertex cop, Vertex robber) const;

 private:
  StateIndex project(const StateSpace& big, StateIndex s, int k, int mover) const;

  StateSpace space_;
  CaptureTimeTable table_;
  PositionalProfile optimal_;
};

/// Each cop independently plays the one-cop CR-optimal move against the
/// robber; the robber plays the canonical (N-1)-cop CR-optimal evasion.
PositionalProfile independent_pursuit_profile(const StateSpace& space);

struct CRResult {
  CaptureTimeTable table;
  std::optional<std::uint32_t> t_max;
  /// T_N(G) < ∞, i.e. c(G) ≤ N-1. For N = 2 this is "cop-win".
  bool cops_win = false;
  PositionalProfile optimal;
};

CRResult solve_cr(const StateSpace& space);

struct CopNumberStep {
  int cops = 0;
  std::size_t states = 0;
  std::optional<std::uint32_t> t_max;
};

struct CopNumberResult {
  /// nullopt when more than max_cops tokens are needed.
  std::optional<int> cop_number;
  /// One verdict per cop count tried, in order.
  std::vector<CopNumberStep> certificate;
};

/// Least k ≤ max_cops with T_{k+1}(G) finite. Throws CapacityError if a
/// required space exceeds the budget.
CopNumberResult cop_number(const Graph& g, int max_cops, StateSpaceOptions options = {});

struct DiscountedValue {
  std::vector<double> values;
  std::size_t sweeps = 0;
  double residual = 0.0;
};

/// Zero-sum discounted value: v(S_C)=1, v(τ)=0, cops maximise γ·v(next),
/// the robber minimises. Equals γ^{T(s)} (0 when T = ∞).
DiscountedValue discounted_cr_value(const StateSpace& space, double gamma,
                                    const SolveOptions& options = {});

}  // namespace scar
