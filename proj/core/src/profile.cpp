#include "scar/profile.hpp"

#include <algorithm>
#include <cmath>

#include "scar/errors.hpp"

namespace scar {

PositionalProfile stay_profile(const StateSpace& space) {
  PositionalProfile profile;
  profile.moves.assign(space.size(), kNullMove);
  for (StateIndex s = 0; s < space.terminal(); ++s) {
    if (space.is_noncapture(s)) profile[s] = space.position(s, space.mover(s));
  }
  return profile;
}

void validate_profile(const StateSpace& space, const PositionalProfile& profile) {
  if (profile.size() != space.size()) {
    throw IllegalActionError("profile covers " + std::to_string(profile.size()) +
                             " states, the space has " + std::to_string(space.size()));
  }
  for (StateIndex s = 0; s < space.size(); ++s) {
    auto legal = space.mover_actions(s);
    if (legal.empty()) {
      if (profile[s] != kNullMove) {
        throw IllegalActionError("non-null move prescribed at " + to_string(space.state(s)));
      }
    } else if (!std::binary_search(legal.begin(), legal.end(), profile[s])) {
      throw IllegalActionError("player " + std::to_string(space.mover(s)) + " prescribed move to " +
                               std::to_string(profile[s]) + " at " + to_string(space.state(s)));
    }
  }
}

ProfileOutcome evaluate_outcomes(const StateSpace& space, const PositionalProfile& profile) {
  const auto n = space.size();
  ProfileOutcome out;
  out.capture_time.assign(n, kNever);
  out.capture_state.assign(n, space.terminal());

  enum : std::uint8_t { kUnseen, kOnStack, kDone };
  std::vector<std::uint8_t> mark(n, kUnseen);
  mark[space.terminal()] = kDone;
  std::vector<StateIndex> stack;

  for (StateIndex start = 0; start < n; ++start) {
    if (mark[start] != kUnseen) continue;
    StateIndex s = start;
    while (mark[s] == kUnseen) {
      if (space.is_capture(s)) {
        out.capture_time[s] = 0;
        out.capture_state[s] = s;
        mark[s] = kDone;
        break;
      }
      mark[s] = kOnStack;
      stack.push_back(s);
      s = space.successor(s, profile[s]);
    }
    // s is either resolved or on the current stack (a cycle without capture).
    const bool cycle = mark[s] == kOnStack;
    while (!stack.empty()) {
      StateIndex t = stack.back();
      stack.pop_back();
      if (!cycle) {
        StateIndex next = space.successor(t, profile[t]);
        if (out.capture_time[next] != kNever) {
          out.capture_time[t] = out.capture_time[next] + 1;
          out.capture_state[t] = out.capture_state[next];
        }
      }
      mark[t] = kDone;
    }
  }
  return out;
}

ValueVector profile_values(const StateSpace& space, const GameParams& params,
                           const ProfileOutcome& outcome) {
  ValueVector u(space.players(), space.size());
  for (StateIndex s = 0; s < space.size(); ++s) {
    if (outcome.capture_time[s] == kNever) continue;
    const double discount = std::pow(params.gamma, static_cast<double>(outcome.capture_time[s]));
    const CopSet capturing = space.capturing_set(outcome.capture_state[s]);
    for (int m = 1; m <= space.players(); ++m) {
      u(m, s) = discount * capture_share(params, capturing, m);
    }
  }
  return u;
}

}  // namespace scar
