#include "scar/payoffs.hpp"

#include <cmath>

#include "scar/errors.hpp"

namespace scar {

ParamsCheck validate_params(const GameParams& p) {
  if (p.players < 2) {
    throw ValidationError("player count N must be at least 2, got " + std::to_string(p.players));
  }
  if (!(p.gamma > 0.0 && p.gamma < 1.0)) {
    throw ValidationError("discount factor gamma must lie in the open interval (0,1), got " +
                          std::to_string(p.gamma));
  }
  ParamsCheck check;
  if (p.mode == EpsilonMode::SplitEquivalent) return check;

  const double upper = p.allow_extended_epsilon ? 1.0 : 1.0 / (p.players - 1);
  if (!(p.epsilon >= 0.0 && p.epsilon <= upper)) {
    throw ValidationError("epsilon must lie in [0, " + std::to_string(upper) + "] for N=" +
                          std::to_string(p.players) + ", got " + std::to_string(p.epsilon) +
                          (p.allow_extended_epsilon ? "" : " (use extended epsilon for [0,1])"));
  }
  check.in_omega_tilde = in_omega_tilde(p.gamma, p.epsilon);
  return check;
}

double turn_payoff(const StateSpace& space, const GameParams& params, StateIndex s, int n) {
  CopSet capturing = space.capturing_set(s);
  return capturing ? capture_share(params, capturing, n) : 0.0;
}

double discounted_payoff(const GameParams& params, std::optional<std::size_t> capture_time,
                         CopSet capturing, int n) {
  if (!capture_time) return 0.0;
  return std::pow(params.gamma, static_cast<double>(*capture_time)) *
         capture_share(params, capturing, n);
}

Rational parse_rational(std::string_view text) {
  auto fail = [&] { return ParseError("not a decimal or fraction: '" + std::string(text) + "'"); };
  if (text.empty()) throw fail();
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Rational num = parse_rational(text.substr(0, slash));
    Rational den = parse_rational(text.substr(slash + 1));
    if (den == 0) throw fail();
    return num / den;
  }
  bool negative = text.front() == '-';
  if (negative || text.front() == '+') text.remove_prefix(1);
  boost::multiprecision::cpp_int numerator = 0;
  boost::multiprecision::cpp_int denominator = 1;
  bool seen_point = false;
  bool seen_digit = false;
  for (char c : text) {
    if (c == '.' && !seen_point) {
      seen_point = true;
    } else if (c >= '0' && c <= '9') {
      numerator = numerator * 10 + (c - '0');
      if (seen_point) denominator *= 10;
      seen_digit = true;
    } else {
      throw fail();
    }
  }
  if (!seen_digit) throw fail();
  Rational r(numerator, denominator);
  return negative ? Rational(-r) : r;
}

Rational discounted_payoff_exact(const ExactParams& params,
                                 std::optional<std::size_t> capture_time, CopSet capturing,
                                 int n) {
  if (!capture_time) return Rational(0);
  Rational discount = 1;
  for (std::size_t t = 0; t < *capture_time; ++t) discount *= params.gamma;
  return discount * capture_share<Rational>(params.players, params.mode, params.epsilon, capturing, n);
}

}  // namespace scar
