#pragma once

#include <optional>
#include <string>

namespace kslab {

/// Inputs of the equi-integrable interpolation inequality.
struct InterpParams {
  int N = 2;                     // spatial dimension
  double r = 2.0;                // gradient-norm exponent, r >= 1
  double q = 2.0;                // target-norm exponent, q > 0
  std::optional<double> theta;   // required when q <= r, 0 < theta < q
};

/// Outcome of validate_admissible. Never thrown; `ok()` is false iff
/// `violation` names the first failed constraint.
struct Admissibility {
  std::string violation;

  bool ok() const { return violation.empty(); }
  explicit operator bool() const { return ok(); }
};

/// Derived exponents of the inequality
///   |phi|_q <= eps |grad phi|_r^a |phi|_p^(1-b) + C |phi|_p^rhs_exp1 + C |phi|_p + C |phi|_p^(1-b).
struct ExponentSet {
  double p = 0.0;
  double q0 = 0.0;
  double a = 0.0;
  double b = 0.0;
  double rhs_exp1 = 0.0;   // (1 - N/r + (N+r)/q0) b + (1 - b)
  double sobolev_s = 0.0;  // N r / (N + r)
  bool exact = false;      // computed through the rational fast path
};

/// Upper bound N r / (N - r)_+ on q; +infinity when r >= N.
double critical_q(int N, double r);

Admissibility validate_admissible(const InterpParams& params);

/// Throws InvalidInput carrying the admissibility message.
ExponentSet compute_exponents(const InterpParams& params);

/// Gagliardo-Nirenberg exponent a = (N/p - N/q) / (1 - N/r + N/p).
/// Throws InvalidInput (message includes the value) when a is not in (0,1).
double gn_exponent(int N, double p, double q, double r);

/// key=value lines, one per field.
std::string to_key_value(const ExponentSet& e);

}  // namespace kslab
