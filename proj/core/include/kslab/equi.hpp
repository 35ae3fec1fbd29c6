#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "kslab/field.hpp"

namespace kslab {

/// Cells of a field sorted by density |v|^p (descending) with cumulative
/// measure and mass. m(delta) is the exact supremum of the integral of |v|^p
/// over unions of cells (the last one possibly fractional) of measure delta.
class BathtubTable {
 public:
  BathtubTable(const ScalarField& f, double p);

  double p() const { return p_; }
  double measure() const { return cum_area_.back(); }
  double total() const { return cum_mass_.back(); }
  double min_cell_area() const { return min_cell_area_; }

  /// m(delta); delta > |Omega| is clamped.
  double modulus(double delta) const;
  /// Largest delta in [0, |Omega|] with m(delta) <= eps.
  double inverse(double eps) const;

 private:
  double p_;
  double min_cell_area_;
  std::vector<double> density_;   // sorted descending
  std::vector<double> cum_area_;  // size n+1
  std::vector<double> cum_mass_;  // size n+1
};

struct ModulusCurve {
  double p = 1.0;
  std::string source;
  std::vector<double> delta;  // increasing
  std::vector<double> mass;   // m(delta)
};

struct EquiProfile {
  std::string family;
  std::vector<double> eps_prime;  // increasing
  std::vector<double> delta;
  /// delta reported as 0: some member exceeds eps' already on one cell.
  std::vector<bool> unresolved;

  bool any_unresolved() const;
  /// delta at the given eps' (exact match in the ladder), throws if absent.
  double delta_at(double eps) const;
};

/// {0.5, 0.2, 0.1, 0.05, 0.02, 0.01}
std::vector<double> default_eps_ladder();

/// Throws InvalidInput for delta <= 0 or p <= 0.
double bathtub_modulus(const ScalarField& f, double p, double delta);

/// Samples m on n_points log-spaced deltas from the smallest cell area to |Omega|.
ModulusCurve modulus_curve(const ScalarField& f, double p, int n_points, std::string source = {});

/// delta(eps') = min over members of the largest delta with m(delta) <= eps'.
EquiProfile family_profile(std::span<const ScalarField> fields, double p,
                           std::span<const double> ladder = {}, std::string family = {});

/// m(delta) <= eps' for every tabulated pair. The non-strict comparison is
/// the closure of the strict-measure quantifier |E| < delta, evaluated with
/// a relative round-off allowance of 1e-12.
bool check_membership(const ScalarField& f, const EquiProfile& profile, double p);

void write_curve_csv(const std::filesystem::path& path, const ModulusCurve& c);
void write_profile_csv(const std::filesystem::path& path, const EquiProfile& profile);
EquiProfile read_profile_csv(const std::filesystem::path& path);

}  // namespace kslab
