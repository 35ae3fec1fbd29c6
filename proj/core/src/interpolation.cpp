#include "kslab/interpolation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kslab/error.hpp"

namespace kslab {

double Bump::operator()(double x, double y) const {
  const double dx = x - cx, dy = y - cy;
  const double s = (dx * dx + dy * dy) / (radius * radius);
  if (s >= 1.0) return 0.0;
  const double w = 1.0 - s;
  return amplitude * w * w * w;
}

ScalarField sample_bump(GridPtr grid, const Bump& bump) {
  Bump b = bump;
  if (grid->is_radial()) b.cx = b.cy = 0.0;
  return ScalarField::sample(std::move(grid), [&](double x, double y) { return b(x, y); });
}

GnRatio gn_ratio(const ScalarField& f, int N, double p, double q, double r) {
  GnRatio out;
  out.a = gn_exponent(N, p, q, r);
  const double g = grad_lr_norm(f, r);
  if (g == 0.0) {
    out.degenerate = true;
    return out;
  }
  out.ratio = lp_norm(f, q) / (std::pow(g, out.a) * std::pow(lp_norm(f, p), 1.0 - out.a));
  return out;
}

double InequalityTerms::required_c(double eps) const {
  if (is_zero()) return 0.0;
  const double s = t2 + t3 + t4;
  return std::max(0.0, (lhs - eps * t1) / s);
}

bool InequalityReport::all_hold() const {
  return std::all_of(rows.begin(), rows.end(), [](const InequalityTerms& t) { return t.holds; });
}

InequalityTerms evaluate_terms(const ScalarField& f, const InterpParams& params, const ExponentSet& e) {
  InequalityTerms t;
  const double np = lp_norm(f, e.p);
  const double g = grad_lr_norm(f, params.r);
  t.lhs = lp_norm(f, params.q);
  t.t1 = std::pow(g, e.a) * std::pow(np, 1.0 - e.b);
  t.t2 = std::pow(np, e.rhs_exp1);
  t.t3 = np;
  t.t4 = std::pow(np, 1.0 - e.b);
  return t;
}

namespace {

bool verdict(const InequalityTerms& t, double eps, double c) {
  const double rhs = eps * t.t1 + c * (t.t2 + t.t3 + t.t4);
  return t.lhs <= rhs * (1.0 + 1e-12);
}

void require_family(std::span<const ScalarField> fields) {
  if (fields.empty()) throw InvalidInput("interpolation: empty family");
  const Grid& g0 = fields.front().grid();
  for (const auto& f : fields) {
    if (!f.grid().same_layout(g0)) throw InvalidInput("interpolation: fields must share one grid");
  }
}

}  // namespace

InequalityReport check_interpolation(std::span<const ScalarField> fields, const InterpParams& params,
                                     double epsilon, double c_eps) {
  require_family(fields);
  if (!(epsilon > 0.0)) throw InvalidInput("check_interpolation: epsilon must be > 0");
  if (!(c_eps >= 0.0)) throw InvalidInput("check_interpolation: C must be >= 0");
  InequalityReport rep;
  rep.params = params;
  rep.exponents = compute_exponents(params);
  rep.epsilon = epsilon;
  rep.c_eps = c_eps;
  rep.rows.reserve(fields.size());
  for (const auto& f : fields) {
    InequalityTerms t = evaluate_terms(f, params, rep.exponents);
    t.holds = verdict(t, epsilon, c_eps);
    rep.fitted_c = std::max(rep.fitted_c, t.required_c(epsilon));
    rep.rows.push_back(t);
  }
  return rep;
}

double fit_c_epsilon(std::span<const ScalarField> fields, const InterpParams& params, double epsilon) {
  require_family(fields);
  if (!(epsilon > 0.0)) throw InvalidInput("fit_c_epsilon: epsilon must be > 0");
  const ExponentSet e = compute_exponents(params);
  double c = 0.0;
  for (const auto& f : fields) c = std::max(c, evaluate_terms(f, params, e).required_c(epsilon));
  return c;
}

std::vector<ScalarField> concentration_family(GridPtr grid, const Bump& base, std::span<const double> lambdas,
                                              int N, double p) {
  if (!(p > 0.0)) throw InvalidInput("concentration_family: p must be > 0");
  const double h = grid->is_radial() ? grid->hx() : std::max(grid->hx(), grid->hy());
  std::vector<ScalarField> out;
  out.reserve(lambdas.size());
  for (double lambda : lambdas) {
    if (!(lambda >= 1.0)) throw InvalidInput("concentration_family: lambda must be >= 1");
    if (base.radius / lambda < 4.0 * h) {
      throw InvalidInput("concentration_family: lambda=" + std::to_string(lambda) +
                         " shrinks the bump support below 4 cells");
    }
    Bump b = base;
    b.radius = base.radius / lambda;
    b.amplitude = base.amplitude * std::pow(lambda, N / p);
    out.push_back(sample_bump(grid, b));
  }
  return out;
}

std::vector<ScalarField> concentration_family(GridPtr grid, const Bump& base, std::span<const double> lambdas,
                                              const InterpParams& params) {
  const ExponentSet e = compute_exponents(params);
  return concentration_family(std::move(grid), base, lambdas, params.N, e.p);
}

}  // namespace kslab
