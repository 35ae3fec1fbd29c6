#include "kslab/field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_set>

#include "kslab/error.hpp"
#include "kslab/summation.hpp"

namespace kslab {

ScalarField::ScalarField(GridPtr grid, double fill) : grid_(std::move(grid)) {
  if (!grid_) throw InvalidInput("ScalarField: null grid");
  values_.assign(grid_->size(), fill);
}

ScalarField::ScalarField(GridPtr grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (!grid_) throw InvalidInput("ScalarField: null grid");
  if (values_.size() != grid_->size()) throw InvalidInput("ScalarField: value count does not match grid");
}

ScalarField ScalarField::sample(GridPtr grid, const std::function<double(double, double)>& fn) {
  ScalarField f(grid);
  const Grid& g = *grid;
  if (g.is_radial()) {
    for (int i = 0; i < g.nx(); ++i) f.values_[i] = fn(g.center_x(i), 0.0);
  } else {
    for (int j = 0; j < g.ny(); ++j) {
      const double y = g.center_y(j);
      for (int i = 0; i < g.nx(); ++i) f.values_[g.index(i, j)] = fn(g.center_x(i), y);
    }
  }
  return f;
}

void ScalarField::check_finite(const std::string& what) const {
  for (std::size_t c = 0; c < values_.size(); ++c) {
    if (!std::isfinite(values_[c])) {
      throw NumericalFault(what + ": non-finite value in cell " + std::to_string(c));
    }
  }
}

void ScalarField::require_nonnegative(const std::string& what) const {
  for (std::size_t c = 0; c < values_.size(); ++c) {
    if (!(values_[c] >= 0.0)) throw InvalidInput(what + ": negative or non-finite value in cell " + std::to_string(c));
  }
}

double ScalarField::max_value() const { return *std::max_element(values_.begin(), values_.end()); }
double ScalarField::min_value() const { return *std::min_element(values_.begin(), values_.end()); }

ScalarField ScalarField::scaled(double c) const {
  ScalarField out(*this);
  for (double& v : out.values_) v *= c;
  return out;
}

ScalarField ScalarField::abs_pow(double p) const {
  ScalarField out(*this);
  for (double& v : out.values_) v = std::pow(std::fabs(v), p);
  return out;
}

namespace {

double weighted_sum(const ScalarField& f, const std::function<double(double)>& g) {
  const auto areas = f.grid().areas();
  const auto vals = f.values();
  std::vector<double> terms(vals.size());
  for (std::size_t c = 0; c < vals.size(); ++c) terms[c] = g(vals[c]) * areas[c];
  return pairwise_sum(terms);
}

void require_exponent(double p, const char* op) {
  if (!(p > 0.0)) throw InvalidInput(std::string(op) + ": exponent must be > 0");
}

// d/dx (or d/drho) in cell i of a 1-D line accessed through `at`.
template <class At>
double line_derivative(const At& at, int i, int n, double h, bool symmetric_start) {
  if (i == 0) {
    if (symmetric_start) return (at(1) - at(0)) / (2.0 * h);
    return (at(1) - at(0)) / h;
  }
  if (i == n - 1) return (at(n - 1) - at(n - 2)) / h;
  return (at(i + 1) - at(i - 1)) / (2.0 * h);
}

// Second difference with mirror ghosts.
template <class At>
double line_second(const At& at, int i, int n, double h) {
  const double l = i > 0 ? at(i - 1) : at(i);
  const double r = i < n - 1 ? at(i + 1) : at(i);
  return (l - 2.0 * at(i) + r) / (h * h);
}

// Mirror-ghost first difference (used inside the Hessian).
template <class At>
double line_central_mirror(const At& at, int i, int n, double h) {
  const double l = i > 0 ? at(i - 1) : at(i);
  const double r = i < n - 1 ? at(i + 1) : at(i);
  return (r - l) / (2.0 * h);
}

}  // namespace

double integrate_pow(const ScalarField& f, double p) {
  require_exponent(p, "integrate_pow");
  if (p == 1.0) return weighted_sum(f, [](double v) { return std::fabs(v); });
  if (p == 2.0) return weighted_sum(f, [](double v) { return v * v; });
  return weighted_sum(f, [p](double v) { return std::pow(std::fabs(v), p); });
}

double integrate(const ScalarField& f) {
  return weighted_sum(f, [](double v) { return v; });
}

double max_norm(const ScalarField& f) {
  double m = 0.0;
  for (double v : f.values()) m = std::max(m, std::fabs(v));
  return m;
}

double lp_norm(const ScalarField& f, double p) {
  if (std::isinf(p) && p > 0) return max_norm(f);
  require_exponent(p, "lp_norm");
  const double s = integrate_pow(f, p);
  return s == 0.0 ? 0.0 : std::pow(s, 1.0 / p);
}

ScalarField gradient_magnitude(const ScalarField& f) {
  const Grid& g = f.grid();
  ScalarField out(f.grid_ptr());
  if (g.is_radial()) {
    const auto at = [&](int i) { return f[i]; };
    for (int i = 0; i < g.nx(); ++i) out[i] = std::fabs(line_derivative(at, i, g.nx(), g.hx(), true));
    return out;
  }
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 0; i < g.nx(); ++i) {
      const auto ax = [&](int k) { return f.at(k, j); };
      const auto ay = [&](int k) { return f.at(i, k); };
      const double dx = line_derivative(ax, i, g.nx(), g.hx(), false);
      const double dy = line_derivative(ay, j, g.ny(), g.hy(), false);
      out.at(i, j) = std::hypot(dx, dy);
    }
  }
  return out;
}

double grad_lr_norm(const ScalarField& f, double r) {
  if (!(r >= 1.0)) throw InvalidInput("grad_lr_norm: r must be >= 1");
  return lp_norm(gradient_magnitude(f), r);
}

double integrate_over_mask(const ScalarField& f, std::span<const std::size_t> mask, double p) {
  require_exponent(p, "integrate_over_mask");
  std::unordered_set<std::size_t> seen;
  std::vector<double> terms;
  terms.reserve(mask.size());
  for (std::size_t c : mask) {
    if (c >= f.size()) throw InvalidInput("integrate_over_mask: cell index out of range");
    if (!seen.insert(c).second) throw InvalidInput("integrate_over_mask: duplicate cell in mask");
    terms.push_back(std::pow(std::fabs(f[c]), p) * f.grid().area(c));
  }
  return pairwise_sum(terms);
}

ScalarField laplacian(const ScalarField& f) {
  const Grid& g = f.grid();
  ScalarField out(f.grid_ptr());
  if (g.is_radial()) {
    const int n = g.nx();
    const double h = g.hx();
    for (int i = 0; i < n; ++i) {
      const double in = i > 0 ? g.face_measure(i) * (f[i] - f[i - 1]) / h : 0.0;
      const double outf = i < n - 1 ? g.face_measure(i + 1) * (f[i + 1] - f[i]) / h : 0.0;
      out[i] = (outf - in) / g.area(i);
    }
    return out;
  }
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 0; i < g.nx(); ++i) {
      const auto ax = [&](int k) { return f.at(k, j); };
      const auto ay = [&](int k) { return f.at(i, k); };
      out.at(i, j) = line_second(ax, i, g.nx(), g.hx()) + line_second(ay, j, g.ny(), g.hy());
    }
  }
  return out;
}

ScalarField hessian_magnitude(const ScalarField& f) {
  const Grid& g = f.grid();
  ScalarField out(f.grid_ptr());
  if (g.is_radial()) {
    // Eigenvalues of D^2 for radial data: phi_rr and (N-1) copies of phi_r / rho.
    const auto at = [&](int k) { return f[k]; };
    for (int i = 0; i < g.nx(); ++i) {
      const double rr = line_second(at, i, g.nx(), g.hx());
      const double r = line_central_mirror(at, i, g.nx(), g.hx()) / g.center_x(i);
      out[i] = std::sqrt(rr * rr + (g.dimension() - 1) * r * r);
    }
    return out;
  }
  const int nx = g.nx(), ny = g.ny();
  const auto clampx = [nx](int k) { return std::clamp(k, 0, nx - 1); };
  const auto clampy = [ny](int k) { return std::clamp(k, 0, ny - 1); };
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const auto ax = [&](int k) { return f.at(k, j); };
      const auto ay = [&](int k) { return f.at(i, k); };
      const double xx = line_second(ax, i, nx, g.hx());
      const double yy = line_second(ay, j, ny, g.hy());
      const double xy = (f.at(clampx(i + 1), clampy(j + 1)) - f.at(clampx(i + 1), clampy(j - 1)) -
                         f.at(clampx(i - 1), clampy(j + 1)) + f.at(clampx(i - 1), clampy(j - 1))) /
                        (4.0 * g.hx() * g.hy());
      out.at(i, j) = std::sqrt(xx * xx + yy * yy + 2.0 * xy * xy);
    }
  }
  return out;
}

double w2q_norm(const ScalarField& f, double q) {
  return lp_norm(f, q) + lp_norm(gradient_magnitude(f), q) + lp_norm(hessian_magnitude(f), q);
}

double w1r_norm(const ScalarField& f, double r) {
  const double a = integrate_pow(f, r);
  const double b = integrate_pow(gradient_magnitude(f), r);
  const double s = a + b;
  return s == 0.0 ? 0.0 : std::pow(s, 1.0 / r);
}

}  // namespace kslab
