#pragma once

#include <span>
#include <vector>

#include "kslab/exponents.hpp"
#include "kslab/field.hpp"

namespace kslab {

/// Compactly supported bump A * (1 - |x - c|^2 / R^2)^3 (zero outside the
/// radius). Radial grids ignore the center and use the origin.
struct Bump {
  double cx = 0.5;
  double cy = 0.5;
  double radius = 0.25;
  double amplitude = 1.0;

  double operator()(double x, double y) const;
};

ScalarField sample_bump(GridPtr grid, const Bump& bump);

struct GnRatio {
  bool degenerate = false;  // zero gradient norm: no ratio
  double ratio = 0.0;
  double a = 0.0;
};

/// |phi|_q / (|grad phi|_r^a |phi|_p^(1-a)) with a from gn_exponent.
GnRatio gn_ratio(const ScalarField& f, int N, double p, double q, double r);

/// One family member evaluated against
///   lhs <= eps * t1 + C * (t2 + t3 + t4).
struct InequalityTerms {
  double lhs = 0.0;  // |phi|_q
  double t1 = 0.0;   // |grad phi|_r^a |phi|_p^(1-b)
  double t2 = 0.0;   // |phi|_p^rhs_exp1
  double t3 = 0.0;   // |phi|_p
  double t4 = 0.0;   // |phi|_p^(1-b)
  bool holds = false;

  bool is_zero() const { return lhs == 0.0 && t3 == 0.0; }
  /// Smallest admissible C for this member alone (0 for the zero field).
  double required_c(double eps) const;
};

struct InequalityReport {
  InterpParams params;
  ExponentSet exponents;
  double epsilon = 0.0;
  double c_eps = 0.0;       // constant the verdicts were evaluated with
  double fitted_c = 0.0;    // fit_c_epsilon over the same family
  std::vector<InequalityTerms> rows;

  bool all_hold() const;
};

InequalityTerms evaluate_terms(const ScalarField& f, const InterpParams& params, const ExponentSet& e);

/// Verdicts use a 1e-12 relative allowance so that the member attaining the
/// fitted constant is reported as holding.
InequalityReport check_interpolation(std::span<const ScalarField> fields, const InterpParams& params,
                                     double epsilon, double c_eps);

/// max over members of max(0, (lhs - eps t1) / (t2 + t3 + t4)); exact
/// because the inequality is affine in C.
double fit_c_epsilon(std::span<const ScalarField> fields, const InterpParams& params, double epsilon);

/// phi_lambda(x) = lambda^(N/p) base(c + lambda (x - c)) for each lambda >= 1.
/// Rejects members whose support radius falls below 4 cells.
std::vector<ScalarField> concentration_family(GridPtr grid, const Bump& base, std::span<const double> lambdas,
                                              int N, double p);
std::vector<ScalarField> concentration_family(GridPtr grid, const Bump& base, std::span<const double> lambdas,
                                              const InterpParams& params);

}  // namespace kslab
