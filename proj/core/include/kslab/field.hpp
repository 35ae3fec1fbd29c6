#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "kslab/grid.hpp"

namespace kslab {

/// Cell-centered real values on a shared grid.
class ScalarField {
 public:
  ScalarField() = default;
  ScalarField(GridPtr grid, double fill = 0.0);
  ScalarField(GridPtr grid, std::vector<double> values);

  /// Samples fn at cell centers; radial grids pass (rho, 0).
  static ScalarField sample(GridPtr grid, const std::function<double(double, double)>& fn);

  const Grid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  std::size_t size() const { return values_.size(); }

  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }
  double operator[](std::size_t c) const { return values_[c]; }
  double& operator[](std::size_t c) { return values_[c]; }
  double at(int i, int j) const { return values_[grid_->index(i, j)]; }
  double& at(int i, int j) { return values_[grid_->index(i, j)]; }

  /// Throws NumericalFault naming `what` on the first NaN/Inf.
  void check_finite(const std::string& what = "field") const;
  /// Throws InvalidInput if any value is negative (or non-finite).
  void require_nonnegative(const std::string& what = "field") const;

  double max_value() const;
  double min_value() const;

  ScalarField scaled(double c) const;
  /// Pointwise |value|^p.
  ScalarField abs_pow(double p) const;

 private:
  GridPtr grid_;
  std::vector<double> values_;
};

/// (sum |v|^p area)^(1/p), midpoint quadrature; p = +inf gives the max norm.
double lp_norm(const ScalarField& f, double p);
double max_norm(const ScalarField& f);
/// sum |v|^p area.
double integrate_pow(const ScalarField& f, double p);
/// sum v area.
double integrate(const ScalarField& f);

/// Cellwise gradient magnitude: central differences in the interior,
/// one-sided differences in boundary cells. The radial center uses the
/// symmetry ghost.
ScalarField gradient_magnitude(const ScalarField& f);
/// (sum |grad v|^r area)^(1/r).
double grad_lr_norm(const ScalarField& f, double r);

/// sum over masked cells of |v|^p area. Mask entries must be distinct cell
/// indices of the field's grid.
double integrate_over_mask(const ScalarField& f, std::span<const std::size_t> mask, double p);

/// Neumann Laplacian with mirror ghost cells (zero flux through the
/// boundary); radial grids use the conservative rho^(N-1) form.
ScalarField laplacian(const ScalarField& f);
/// Cellwise Frobenius norm of the discrete Hessian (mirror ghosts).
ScalarField hessian_magnitude(const ScalarField& f);
/// |f|_q + |grad f|_q + |D^2 f|_q.
double w2q_norm(const ScalarField& f, double q);
/// (|f|_r^r + |grad f|_r^r)^(1/r).
double w1r_norm(const ScalarField& f, double r);

}  // namespace kslab
