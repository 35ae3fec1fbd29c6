#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "kslab/field.hpp"
#include "kslab/interpolation.hpp"

namespace kslab {

enum class HaltReason { none, time_reached, dt_floor, value_cap, nan };

std::string to_string(HaltReason h);
HaltReason halt_from_string(const std::string& s);

/// Keller-Segel state on one grid.
struct SimState {
  ScalarField u;
  ScalarField v;
  double t = 0.0;
  double dt = 0.0;  // last step taken
  std::int64_t steps = 0;
  HaltReason halt = HaltReason::none;
  /// Cells found negative after a step. The scheme never clips, so this
  /// stays zero whenever the step-size restriction holds.
  std::int64_t negative_events = 0;
};

struct DtPolicy {
  double safety = 0.45;
  double dt_floor = 1e-12;
  /// value cap = factor * initial peak ...
  double value_cap_factor = 1e6;
  /// ... limited by fraction * mass / smallest cell area (0 disables).
  double saturation_fraction = 0.25;
  /// Absolute cap; overrides both rules when > 0.
  double value_cap = 0.0;
};

/// Cap on max u derived from the initial state and the policy.
double resolve_value_cap(const DtPolicy& policy, const ScalarField& u0);

/// Explicit conservative stepper: central diffusion, upwinded chemotactic
/// flux, mirror-ghost Neumann boundary. The step size keeps every update
/// a nonnegative combination of old values:
///   dt = safety * min_c min(1 / (D_c + A_c), 1 / (D_c + 1))
/// with D_c the diffusive and A_c the chemotactic outflow rate of cell c.
class KellerSegelStepper {
 public:
  KellerSegelStepper(GridPtr grid, DtPolicy policy, double value_cap);

  const Grid& grid() const { return *grid_; }
  double value_cap() const { return value_cap_; }
  const DtPolicy& policy() const { return policy_; }

  /// Positivity-preserving step bound for the given state.
  double stable_dt(const SimState& s) const;

  /// One step, shortened to at most max_dt. Sets halt on dt_floor, NaN, or
  /// value cap; a halted state is returned unchanged.
  SimState step(const SimState& s, double max_dt = std::numeric_limits<double>::infinity()) const;
  void step_in_place(SimState& s, double max_dt = std::numeric_limits<double>::infinity()) const;

 private:
  void fluxes(const SimState& s);

  GridPtr grid_;
  DtPolicy policy_;
  double value_cap_;
  std::vector<double> diff_rate_;  // D_c
  // Per-step scratch (mutable to keep step() const-callable).
  mutable std::vector<double> flux_x_, flux_y_, out_rate_, lap_v_;
};

struct InitialBump {
  double mass = 1.0;
  double cx = 0.5;
  double cy = 0.5;
  double width = 0.1;
};

/// Nonnegative initial datum. Bumps are (1 - |x-c|^2/w^2)^3 profiles
/// normalized so the discrete integral equals `mass` exactly.
struct InitialData {
  enum class Kind { constant, bumps, cosine, file } kind = Kind::constant;
  double value = 1.0;               // constant level / background for bumps and cosine
  std::vector<InitialBump> bumps;
  double amplitude = 0.0;           // cosine: value + amplitude cos(m pi x) cos(n pi y)
  int mode_x = 1;
  int mode_y = 0;
  std::filesystem::path file;
};

ScalarField make_initial(GridPtr grid, const InitialData& data);

struct GeometrySpec {
  GridKind kind = GridKind::rectangle;
  double lx = 1.0, ly = 1.0;
  int nx = 32, ny = 32;
  double radius = 1.0;
  int cells = 64;
  int dimension = 2;

  GridPtr build() const;
};

struct MonitorSpec {
  double every = 0.1;            // series cadence (time units)
  double snapshot_every = 1.0;   // snapshot cadence; <= 0 keeps only t=0 and the final state
  std::vector<double> lp = {2.0, 3.0};  // p list for int u^p
  std::vector<double> radii_cells = {4, 8, 16, 32};  // concentration ladder, in cells
};

struct SolverConfig {
  GeometrySpec geometry;
  double t_end = 1.0;
  DtPolicy dt;
  InitialData u0;
  InitialData v0;
  MonitorSpec monitor;
  std::filesystem::path output_dir;  // empty: keep results in memory only
  std::int64_t max_steps = 0;        // 0: unlimited

  void validate() const;
};

struct SeriesRow {
  double t = 0.0;
  double dt = 0.0;
  std::int64_t steps = 0;
  double u_inf = 0.0;
  double u_crit = 0.0;           // |u|_{N/2}
  std::vector<double> int_u_p;   // int u^p per monitor.lp
  double int_v = 0.0;
  double mass = 0.0;
  double ulogu = 0.0;            // int u^{N/2} log(u + e)
  double delta01 = 0.0;          // delta(0.1) of u^{N/2} at this time (0 = unresolved)
  double family_delta01 = 0.0;   // running family minimum
  std::vector<double> concentration;  // C(rho_k, t) per ladder radius
};

struct Snapshot {
  double t = 0.0;
  ScalarField u;
  ScalarField v;
};

struct ConcentrationReport {
  std::vector<double> radii;
  std::vector<double> times;
  std::vector<std::vector<double>> values;  // [time][radius]
  std::vector<std::vector<std::pair<double, double>>> centers;  // argmax per [time][radius]
  std::vector<double> sup_over_time;        // per radius

  /// Diameter of the set of argmax centers at the smallest radius.
  double center_wander() const;
};

struct RunReport {
  SolverConfig config;
  int dimension = 2;
  double initial_peak = 0.0;
  double value_cap = 0.0;
  double min_cell_area = 0.0;
  double radii_h = 0.0;  // cell size used to scale the radius ladder
  std::vector<SeriesRow> series;
  std::vector<Snapshot> snapshots;
  ConcentrationReport concentration;
  SimState final_state;

  std::vector<std::string> series_header() const;
};

SimState initial_state(const SolverConfig& cfg);

/// Advances to t_end or halt, recording at the monitor cadence (always
/// including t=0 and the final state). Writes series.csv, halt.json, and
/// snapshots/ when output_dir is set.
RunReport simulate(const SolverConfig& cfg);

void write_series_csv(const std::filesystem::path& path, const RunReport& rep);

// ---------------------------------------------------------------------------
// Linear companion v_t = Lap v - v + f with zero-flux boundary.

/// Piecewise-constant forcing: values[k] acts on [times[k], times[k+1]).
struct ForcingSeries {
  std::vector<double> times;
  std::vector<ScalarField> values;
};

/// Writes f(., t) into out.
using ForcingFunction = std::function<void(double t, ScalarField& out)>;

struct LinearVOptions {
  double safety = 0.45;
  double q = 2.0;                 // exponent of the recorded |Lap v|_q and |f|_q
  double max_dt = 0.0;            // additional cap on dt (0: none)
  double snapshot_every = 0.0;    // 0: only the final state
};

struct LinearVResult {
  std::vector<double> times;      // step nodes, starting at 0
  std::vector<double> lap_norm;   // |Lap v(t_k)|_q
  std::vector<double> forcing_norm;  // |f(t_k)|_q
  std::vector<Snapshot> snapshots;   // u unused (empty field)
  ScalarField final_v;
  double max_dt = 0.0;
};

LinearVResult linear_v_solve(const ForcingSeries& f, const ScalarField& v0, double T, const LinearVOptions& opt = {});
LinearVResult linear_v_solve(const ForcingFunction& f, const ScalarField& v0, double T, const LinearVOptions& opt = {});

}  // namespace kslab
