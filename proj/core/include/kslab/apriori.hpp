#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kslab/field.hpp"
#include "kslab/solver.hpp"

namespace kslab {

struct FitSample {
  std::string label;
  double lhs = 0.0;
  double rhs = 0.0;    // right-hand side without the constant
  double ratio = 0.0;  // lhs / rhs, 0 when lhs = 0
};

/// Empirical constant of an inequality LHS <= C * RHS over a battery.
struct ConstantFitReport {
  std::string inequality;
  std::string family;
  double grid_h = 0.0;
  double horizon = 0.0;  // regularity check only
  bool weighted = true;
  std::vector<FitSample> samples;
  double fitted_c = 0.0;
  /// Samples with rhs = 0 and lhs > 0.
  std::vector<std::string> violations;
  /// Fitted constant on the refined grid and |C_h - C_{h/2}| / max; 0 if absent.
  double refined_c = 0.0;
  double refinement_change = 0.0;

  bool ok() const { return violations.empty(); }
};

/// Records the h/2 constant on the coarse report.
void attach_refinement(ConstantFitReport& coarse, const ConstantFitReport& fine);

/// Smooth space-time forcing sum_k a_k cos(m_k pi x) cos(n_k pi y) cos(w_k t + phi_k)
/// on the unit square; cell-center samples satisfy the mirror Neumann condition.
struct EigenTerm {
  int mx = 1, my = 0;
  double amplitude = 1.0;
  double omega = 0.0;
  double phase = 0.0;
};

struct EigenSum {
  std::string label;
  std::vector<EigenTerm> terms;
  double offset = 0.0;

  void sample(const Grid& g, double t, ScalarField& out) const;
  ScalarField at(GridPtr g, double t) const;
};

/// EigenSum with its spatial modes tabulated once on a grid.
class EigenSampler {
 public:
  EigenSampler(const EigenSum& sum, GridPtr grid);
  void operator()(double t, ScalarField& out) const;

 private:
  EigenSum sum_;
  std::vector<std::vector<double>> modes_;
};

/// `count` random sums with 1..max_terms terms, modes in [0, max_mode],
/// unit-scale amplitudes, frequencies in [0, max_omega].
std::vector<EigenSum> random_eigen_sums(int count, std::uint64_t seed, int max_terms = 4, int max_mode = 3,
                                        double max_omega = 2.0);

struct RegularityCase {
  std::string label;
  EigenSum forcing;
  EigenSum v0;  // evaluated at t = 0
};

struct RegularityOptions {
  double q = 2.0;
  double r = 2.0;
  std::vector<double> horizons = {2.0, 4.0, 8.0};
  bool weighted = true;  // e^{rt/2}; false sets the weight to 1
  double safety = 0.45;
  double max_dt = 0.0;
};

/// LHS = int_0^T w(t) |Lap v|_q^r dt, RHS = int_0^T w(t) |f|_q^r dt + |v0|_{W^{2,q}}^r,
/// trapezoid in time on the solver's step nodes. One linear solve per case
/// serves every horizon. Returns one report per horizon.
std::vector<ConstantFitReport> maximal_regularity_check(GridPtr grid, const std::vector<RegularityCase>& cases,
                                                        const RegularityOptions& opt);

/// Per-case (lhs, rhs) integrals for one solved trajectory, up to T.
FitSample regularity_sample(const LinearVResult& run, const ScalarField& v0, double T, double q, double r,
                            bool weighted, std::string label = {});

/// C = max |grad phi|_{N alpha/(N - alpha)} / (|Lap phi|_alpha + |phi|_s);
/// s = +inf uses the max norm. Requires alpha in (1, N) and s > 0.
ConstantFitReport embedding_check(const std::vector<ScalarField>& fields, double alpha, double s,
                                  const std::vector<std::string>& labels = {});

}  // namespace kslab
