#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "kslab/equi.hpp"
#include "kslab/field.hpp"
#include "kslab/solver.hpp"

namespace kslab {

/// C(rho) = max over candidate centers x of the integral of u^{N/2} over
/// B_rho(x) within Omega, for every radius in `radii` at once.
/// Rectangle grids: balls are the cells whose centers lie within rho of a
/// cell center x; row prefix sums make each ball O(rows). Radial grids:
/// candidate centers are the origin and every cell center on a ray, and each
/// shell contributes the exact fraction of its sphere inside the ball.
/// Summation order is fixed across radii, so C is exactly nondecreasing in rho.
struct ConcentrationAtTime {
  std::vector<double> values;
  std::vector<std::pair<double, double>> centers;
};

ConcentrationAtTime concentration_at(const ScalarField& u, std::span<const double> radii);

ConcentrationReport concentration_function(std::span<const ScalarField> snapshots, std::span<const double> times,
                                           std::span<const double> radii);

enum class SuperlinearKind { u_log, u_loglog, custom };

/// Monotone table (s_k, f_k) for custom functionals; linear between nodes,
/// continued linearly past the last node.
struct SuperlinearTable {
  std::vector<double> s;
  std::vector<double> f;
};

struct SuperlinearResult {
  double value = 0.0;
  /// f(s_max) / s_max^{N/2} at the table's last node (custom tables only).
  double growth_ratio = 0.0;
};

/// Integral of f(u): u^{N/2} log(u+e), u^{N/2} log log(u+e), or a table.
SuperlinearResult superlinear_functional(const ScalarField& u, SuperlinearKind kind,
                                         const SuperlinearTable& table = {});

struct ClassifierThresholds {
  double growth = 10.0;        // |u|_inf growth factor
  double persistence = 0.5;    // C(rho_min, t_halt) / C(rho_max, t_halt)
};

enum class Classification { bounded, blowup_suspected, withheld };

std::string to_string(Classification c);

struct RunVerdict {
  Classification classification = Classification::withheld;
  std::string reason;
  HaltReason halt = HaltReason::none;
  double growth_factor = 0.0;
  double persistence = 0.0;
  double inf_sup_concentration = 0.0;  // inf over rho of sup over t of C(rho, t)
  double delta01_first = 0.0;
  double delta01_last = 0.0;
  double center_wander = 0.0;
};

/// blowup_suspected iff the run halted on dt_floor or value_cap, |u|_inf grew
/// by the growth threshold, and at the final record the smallest ladder ball
/// holds at least `persistence` of what the largest one holds.
RunVerdict classify_run(const RunReport& report, const ClassifierThresholds& th = {});

/// Every other series row and concentration record, keeping the last one.
RunReport subsample(const RunReport& report);

/// Family profile of {u^{N/2}(t)} over the stored snapshots.
EquiProfile critical_family_profile(const RunReport& report, std::span<const double> ladder = {});

}  // namespace kslab
