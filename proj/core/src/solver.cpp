#include "kslab/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

#include "kslab/diagnostics.hpp"
#include "kslab/equi.hpp"
#include "kslab/error.hpp"
#include "kslab/snapshot.hpp"
#include "kslab/summation.hpp"

namespace kslab {

std::string to_string(HaltReason h) {
  switch (h) {
    case HaltReason::none: return "none";
    case HaltReason::time_reached: return "time_reached";
    case HaltReason::dt_floor: return "dt_floor";
    case HaltReason::value_cap: return "value_cap";
    case HaltReason::nan: return "nan";
  }
  return "none";
}

HaltReason halt_from_string(const std::string& s) {
  for (HaltReason h : {HaltReason::none, HaltReason::time_reached, HaltReason::dt_floor, HaltReason::value_cap,
                       HaltReason::nan}) {
    if (to_string(h) == s) return h;
  }
  throw InvalidInput("unknown halt reason '" + s + "'");
}

double resolve_value_cap(const DtPolicy& policy, const ScalarField& u0) {
  if (policy.value_cap > 0.0) return policy.value_cap;
  const double peak = u0.max_value();
  if (!(peak > 0.0)) return std::numeric_limits<double>::infinity();
  double cap = policy.value_cap_factor * peak;
  if (policy.saturation_fraction > 0.0) {
    const double mass = integrate(u0);
    cap = std::min(cap, policy.saturation_fraction * mass / u0.grid().min_area());
  }
  return cap;
}

// ---------------------------------------------------------------------------

KellerSegelStepper::KellerSegelStepper(GridPtr grid, DtPolicy policy, double value_cap)
    : grid_(std::move(grid)), policy_(policy), value_cap_(value_cap) {
  if (!(policy_.safety > 0.0 && policy_.safety < 1.0)) throw InvalidInput("dt policy: safety must lie in (0,1)");
  if (!(policy_.dt_floor > 0.0)) throw InvalidInput("dt policy: dt_floor must be > 0");
  const Grid& g = *grid_;
  diff_rate_.assign(g.size(), 0.0);
  if (g.is_radial()) {
    const int n = g.nx();
    const double h = g.hx();
    for (int c = 0; c < n; ++c) {
      double s = 0.0;
      if (c > 0) s += g.face_measure(c);
      if (c < n - 1) s += g.face_measure(c + 1);
      diff_rate_[c] = s / (h * g.area(c));
    }
    flux_x_.assign(n + 1, 0.0);
  } else {
    const int nx = g.nx(), ny = g.ny();
    for (int j = 0; j < ny; ++j) {
      for (int i = 0; i < nx; ++i) {
        const int kx = (i > 0) + (i < nx - 1);
        const int ky = (j > 0) + (j < ny - 1);
        diff_rate_[g.index(i, j)] = kx / (g.hx() * g.hx()) + ky / (g.hy() * g.hy());
      }
    }
    flux_x_.assign(static_cast<std::size_t>(nx + 1) * ny, 0.0);
    flux_y_.assign(static_cast<std::size_t>(nx) * (ny + 1), 0.0);
  }
  out_rate_.assign(g.size(), 0.0);
  lap_v_.assign(g.size(), 0.0);
}

void KellerSegelStepper::fluxes(const SimState& s) {
  const Grid& g = *grid_;
  std::fill(out_rate_.begin(), out_rate_.end(), 0.0);
  const auto u = s.u.values();
  const auto v = s.v.values();
  if (g.is_radial()) {
    const int n = g.nx();
    const double h = g.hx();
    // Face f sits between cells f-1 and f; faces 0 and n carry no flux.
    for (int f = 1; f < n; ++f) {
      const double gv = (v[f] - v[f - 1]) / h;
      const double up = gv > 0.0 ? u[f - 1] : u[f];
      flux_x_[f] = -(u[f] - u[f - 1]) / h + up * gv;
      const double sf = g.face_measure(f);
      if (gv > 0.0) {
        out_rate_[f - 1] += sf * gv / g.area(f - 1);
      } else {
        out_rate_[f] -= sf * gv / g.area(f);
      }
      lap_v_[f - 1] += sf * gv;
      lap_v_[f] -= sf * gv;
    }
    for (int c = 0; c < n; ++c) lap_v_[c] /= g.area(c);
    return;
  }
  const int nx = g.nx(), ny = g.ny();
  const double hx = g.hx(), hy = g.hy();
  // flux_x_ index (i, j) is the face at the left of cell i (i = 0..nx).
  for (int j = 0; j < ny; ++j) {
    for (int i = 1; i < nx; ++i) {
      const std::size_t l = g.index(i - 1, j), r = g.index(i, j);
      const double gv = (v[r] - v[l]) / hx;
      const double up = gv > 0.0 ? u[l] : u[r];
      flux_x_[static_cast<std::size_t>(j) * (nx + 1) + i] = -(u[r] - u[l]) / hx + up * gv;
      if (gv > 0.0) {
        out_rate_[l] += gv / hx;
      } else {
        out_rate_[r] -= gv / hx;
      }
      lap_v_[l] += gv / hx;
      lap_v_[r] -= gv / hx;
    }
  }
  for (int j = 1; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const std::size_t b = g.index(i, j - 1), t = g.index(i, j);
      const double gv = (v[t] - v[b]) / hy;
      const double up = gv > 0.0 ? u[b] : u[t];
      flux_y_[static_cast<std::size_t>(j) * nx + i] = -(u[t] - u[b]) / hy + up * gv;
      if (gv > 0.0) {
        out_rate_[b] += gv / hy;
      } else {
        out_rate_[t] -= gv / hy;
      }
      lap_v_[b] += gv / hy;
      lap_v_[t] -= gv / hy;
    }
  }
}

double KellerSegelStepper::stable_dt(const SimState& s) const {
  auto* self = const_cast<KellerSegelStepper*>(this);
  std::fill(self->lap_v_.begin(), self->lap_v_.end(), 0.0);
  self->fluxes(s);
  double rate = 0.0;
  for (std::size_t c = 0; c < diff_rate_.size(); ++c) {
    rate = std::max(rate, diff_rate_[c] + std::max(out_rate_[c], 1.0));
  }
  return policy_.safety / rate;
}

SimState KellerSegelStepper::step(const SimState& s, double max_dt) const {
  SimState next = s;
  step_in_place(next, max_dt);
  return next;
}

void KellerSegelStepper::step_in_place(SimState& s, double max_dt) const {
  if (s.halt != HaltReason::none) return;
  const Grid& g = *grid_;
  if (!s.u.grid().same_layout(g) || !s.v.grid().same_layout(g)) {
    throw InvalidInput("step: state grid does not match the stepper grid");
  }
  // stable_dt also fills the face fluxes and the Laplacian scratch for v.
  const double dt_stable = stable_dt(s);
  if (dt_stable < policy_.dt_floor) {
    s.halt = HaltReason::dt_floor;
    return;
  }
  const bool clipped = max_dt < dt_stable;
  const double dt = clipped ? max_dt : dt_stable;
  if (!(dt > 0.0)) throw InvalidInput("step: non-positive step requested");

  auto u = s.u.values();
  auto v = s.v.values();
  if (g.is_radial()) {
    const int n = g.nx();
    for (int c = 0; c < n; ++c) {
      const double out = c < n - 1 ? g.face_measure(c + 1) * flux_x_[c + 1] : 0.0;
      const double in = c > 0 ? g.face_measure(c) * flux_x_[c] : 0.0;
      const double uc = u[c];
      u[c] = uc - dt * (out - in) / g.area(c);
      v[c] = v[c] + dt * (lap_v_[c] - v[c] + uc);
    }
  } else {
    const int nx = g.nx(), ny = g.ny();
    const double hx = g.hx(), hy = g.hy();
    for (int j = 0; j < ny; ++j) {
      for (int i = 0; i < nx; ++i) {
        const std::size_t c = g.index(i, j);
        const std::size_t fx = static_cast<std::size_t>(j) * (nx + 1) + i;
        const double fl = i > 0 ? flux_x_[fx] : 0.0;
        const double fr = i < nx - 1 ? flux_x_[fx + 1] : 0.0;
        const std::size_t fy = static_cast<std::size_t>(j) * nx + i;
        const double fb = j > 0 ? flux_y_[fy] : 0.0;
        const double ft = j < ny - 1 ? flux_y_[fy + nx] : 0.0;
        const double uc = u[c];
        u[c] = uc - dt * ((fr - fl) / hx + (ft - fb) / hy);
        v[c] = v[c] + dt * (lap_v_[c] - v[c] + uc);
      }
    }
  }
  s.t += dt;
  s.dt = dt;
  ++s.steps;

  double umax = 0.0;
  for (std::size_t c = 0; c < u.size(); ++c) {
    if (!std::isfinite(u[c]) || !std::isfinite(v[c])) {
      s.halt = HaltReason::nan;
      return;
    }
    if (u[c] < 0.0 || v[c] < 0.0) ++s.negative_events;
    umax = std::max(umax, u[c]);
  }
  if (umax > value_cap_) s.halt = HaltReason::value_cap;
}

// ---------------------------------------------------------------------------

GridPtr GeometrySpec::build() const {
  if (kind == GridKind::radial) return make_grid(Grid::radial(radius, cells, dimension));
  return make_grid(Grid::rectangle(lx, ly, nx, ny));
}

ScalarField make_initial(GridPtr grid, const InitialData& data) {
  const Grid& g = *grid;
  switch (data.kind) {
    case InitialData::Kind::constant:
      if (!(data.value >= 0.0)) throw InvalidInput("initial data: constant must be >= 0");
      return ScalarField(grid, data.value);
    case InitialData::Kind::cosine: {
      auto f = ScalarField::sample(grid, [&](double x, double y) {
        const double cx = std::cos(data.mode_x * std::numbers::pi * (x - g.x0()) / g.lx());
        const double cy = g.is_radial() ? 1.0 : std::cos(data.mode_y * std::numbers::pi * (y - g.y0()) / g.ly());
        return data.value + data.amplitude * cx * cy;
      });
      f.require_nonnegative("initial data");
      return f;
    }
    case InitialData::Kind::bumps: {
      ScalarField f(grid, data.value);
      if (!(data.value >= 0.0)) throw InvalidInput("initial data: background must be >= 0");
      for (const auto& b : data.bumps) {
        if (!(b.mass >= 0.0) || !(b.width > 0.0)) throw InvalidInput("initial data: bump needs mass >= 0 and width > 0");
        Bump shape{b.cx, b.cy, b.width, 1.0};
        const ScalarField s = sample_bump(grid, shape);
        const double m = integrate(s);
        if (!(m > 0.0)) throw InvalidInput("initial data: bump width below grid resolution");
        for (std::size_t c = 0; c < f.size(); ++c) f[c] += b.mass * s[c] / m;
      }
      return f;
    }
    case InitialData::Kind::file: {
      ScalarField f = read_snapshot(data.file);
      if (!f.grid().same_layout(g)) throw InvalidInput("initial data: file grid does not match geometry");
      f.require_nonnegative("initial data");
      return ScalarField(grid, std::vector<double>(f.values().begin(), f.values().end()));
    }
  }
  throw InvalidInput("initial data: unknown kind");
}

void SolverConfig::validate() const {
  if (!(t_end > 0.0)) throw InvalidInput("simulate: t_end must be > 0");
  if (!(dt.safety > 0.0 && dt.safety < 1.0)) throw InvalidInput("simulate: safety must lie in (0,1)");
  if (!(dt.dt_floor > 0.0)) throw InvalidInput("simulate: dt_floor must be > 0");
  if (!(monitor.every > 0.0)) throw InvalidInput("simulate: monitor cadence must be > 0");
  for (double p : monitor.lp) {
    if (!(p > 0.0)) throw InvalidInput("simulate: monitored exponents must be > 0");
  }
  if (monitor.radii_cells.empty()) throw InvalidInput("simulate: concentration ladder is empty");
  for (double r : monitor.radii_cells) {
    if (!(r >= 2.0)) throw InvalidInput("simulate: concentration radii must span >= 2 cells");
  }
  if (geometry.kind == GridKind::radial && geometry.dimension < 1) throw InvalidInput("simulate: dimension >= 1");
}

SimState initial_state(const SolverConfig& cfg) {
  cfg.validate();
  auto grid = cfg.geometry.build();
  SimState s;
  s.u = make_initial(grid, cfg.u0);
  s.v = make_initial(grid, cfg.v0);
  s.u.require_nonnegative("u0");
  s.v.require_nonnegative("v0");
  return s;
}

std::vector<std::string> RunReport::series_header() const {
  char buf[64];
  std::vector<std::string> h = {"t", "dt", "steps", "u_inf", "u_crit_norm"};
  for (double p : config.monitor.lp) {
    std::snprintf(buf, sizeof buf, "int_u_p%g", p);
    h.emplace_back(buf);
  }
  for (const char* s : {"int_v", "mass", "int_ucrit_log", "delta_0.1", "family_delta_0.1"}) h.emplace_back(s);
  for (double r : config.monitor.radii_cells) {
    std::snprintf(buf, sizeof buf, "C_%gh", r);
    h.emplace_back(buf);
  }
  return h;
}

namespace {

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class Recorder {
 public:
  Recorder(RunReport& rep, std::vector<double> radii) : rep_(rep), radii_(std::move(radii)) {
    rep_.concentration.radii = radii_;
    rep_.concentration.sup_over_time.assign(radii_.size(), 0.0);
  }

  void record(const SimState& s) {
    const double crit = 0.5 * rep_.dimension;
    SeriesRow row;
    row.t = s.t;
    row.dt = s.dt;
    row.steps = s.steps;
    row.u_inf = max_norm(s.u);
    row.u_crit = lp_norm(s.u, crit);
    for (double p : rep_.config.monitor.lp) row.int_u_p.push_back(integrate_pow(s.u, p));
    row.int_v = integrate(s.v);
    row.mass = integrate(s.u);
    row.ulogu = superlinear_functional(s.u, SuperlinearKind::u_log).value;
    const BathtubTable table(s.u.abs_pow(crit), 1.0);
    const double d = table.inverse(0.1);
    row.delta01 = d < table.min_cell_area() ? 0.0 : d;
    family_ = rep_.series.empty() ? row.delta01 : std::min(family_, row.delta01);
    row.family_delta01 = family_;
    auto conc = concentration_at(s.u, radii_);
    row.concentration = conc.values;
    auto& cr = rep_.concentration;
    cr.times.push_back(s.t);
    for (std::size_t k = 0; k < radii_.size(); ++k) {
      cr.sup_over_time[k] = std::max(cr.sup_over_time[k], conc.values[k]);
    }
    cr.values.push_back(std::move(conc.values));
    cr.centers.push_back(std::move(conc.centers));
    rep_.series.push_back(std::move(row));
  }

 private:
  RunReport& rep_;
  std::vector<double> radii_;
  double family_ = 0.0;
};

std::string json_number(double v) { return std::isfinite(v) ? g17(v) : "null"; }

void write_halt_json(const std::filesystem::path& path, const RunReport& rep) {
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw IoFailure("cannot open " + path.string() + " for writing");
  const SimState& s = rep.final_state;
  os << "{\n"
     << "  \"halt\": \"" << to_string(s.halt) << "\",\n"
     << "  \"t\": " << json_number(s.t) << ",\n"
     << "  \"steps\": " << s.steps << ",\n"
     << "  \"last_dt\": " << json_number(s.dt) << ",\n"
     << "  \"u_inf\": " << json_number(max_norm(s.u)) << ",\n"
     << "  \"initial_peak\": " << json_number(rep.initial_peak) << ",\n"
     << "  \"value_cap\": " << json_number(rep.value_cap) << ",\n"
     << "  \"negative_events\": " << s.negative_events << "\n"
     << "}\n";
  if (!os) throw IoFailure("write failed: " + path.string());
}

}  // namespace

void write_series_csv(const std::filesystem::path& path, const RunReport& rep) {
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw IoFailure("cannot open " + path.string() + " for writing");
  const auto header = rep.series_header();
  for (std::size_t k = 0; k < header.size(); ++k) os << (k ? "," : "") << header[k];
  os << '\n';
  for (const auto& r : rep.series) {
    os << g17(r.t) << ',' << g17(r.dt) << ',' << r.steps << ',' << g17(r.u_inf) << ',' << g17(r.u_crit);
    for (double x : r.int_u_p) os << ',' << g17(x);
    os << ',' << g17(r.int_v) << ',' << g17(r.mass) << ',' << g17(r.ulogu) << ',' << g17(r.delta01) << ','
       << g17(r.family_delta01);
    for (double x : r.concentration) os << ',' << g17(x);
    os << '\n';
  }
  if (!os) throw IoFailure("write failed: " + path.string());
}

RunReport simulate(const SolverConfig& cfg) {
  SimState state = initial_state(cfg);
  const GridPtr grid = state.u.grid_ptr();
  const Grid& g = *grid;

  RunReport rep;
  rep.config = cfg;
  rep.dimension = g.dimension();
  rep.initial_peak = state.u.max_value();
  rep.value_cap = resolve_value_cap(cfg.dt, state.u);
  rep.min_cell_area = g.min_area();
  rep.radii_h = g.is_radial() ? g.hx() : std::min(g.hx(), g.hy());
  std::vector<double> radii;
  for (double k : cfg.monitor.radii_cells) radii.push_back(k * rep.radii_h);

  const KellerSegelStepper stepper(grid, cfg.dt, rep.value_cap);
  Recorder recorder(rep, radii);

  std::filesystem::path snap_dir;
  std::ofstream snap_index;
  if (!cfg.output_dir.empty()) {
    std::error_code ec;
    snap_dir = cfg.output_dir / "snapshots";
    std::filesystem::create_directories(snap_dir, ec);
    if (ec) throw IoFailure("cannot create " + snap_dir.string() + ": " + ec.message());
    snap_index.open(snap_dir / "index.csv", std::ios::trunc);
    if (!snap_index) throw IoFailure("cannot write snapshot index");
    snap_index << "index,t,u_file,v_file\n";
  }
  const auto take_snapshot = [&](const SimState& s) {
    if (!rep.snapshots.empty() && rep.snapshots.back().t == s.t) return;
    rep.snapshots.push_back({s.t, s.u, s.v});
    if (!snap_dir.empty()) {
      char name[64];
      const std::size_t k = rep.snapshots.size() - 1;
      std::snprintf(name, sizeof name, "u_%06zu.ksf", k);
      const std::string uf = name;
      std::snprintf(name, sizeof name, "v_%06zu.ksf", k);
      const std::string vf = name;
      write_snapshot(snap_dir / uf, s.u);
      write_snapshot(snap_dir / vf, s.v);
      snap_index << k << ',' << json_number(s.t) << ',' << uf << ',' << vf << '\n';
      if (!snap_index) throw IoFailure("snapshot index write failed");
    }
  };

  recorder.record(state);
  take_snapshot(state);

  const double every = cfg.monitor.every;
  const double snap_every = cfg.monitor.snapshot_every;
  std::int64_t next_monitor = 1;
  std::int64_t next_snap = 1;
  while (state.halt == HaltReason::none) {
    if (cfg.max_steps > 0 && state.steps >= cfg.max_steps) break;
    double target = std::min(cfg.t_end, next_monitor * every);
    if (snap_every > 0.0) target = std::min(target, next_snap * snap_every);
    stepper.step_in_place(state, target - state.t);
    if (state.halt != HaltReason::none) break;
    if (state.t >= target || target - state.t <= 1e-14 * std::max(1.0, target)) {
      state.t = target;
      if (target >= cfg.t_end) {
        state.halt = HaltReason::time_reached;
        break;
      }
      if (target >= next_monitor * every) {
        recorder.record(state);
        ++next_monitor;
      }
      if (snap_every > 0.0 && target >= next_snap * snap_every) {
        take_snapshot(state);
        ++next_snap;
      }
    }
  }
  // A NaN state is reported through halt.json only; the series and snapshots
  // end at the last finite record.
  if (state.halt != HaltReason::nan) {
    if (rep.series.back().t != state.t || rep.series.back().steps != state.steps) recorder.record(state);
    take_snapshot(state);
  }
  rep.final_state = state;

  if (!cfg.output_dir.empty()) {
    write_series_csv(cfg.output_dir / "series.csv", rep);
    write_halt_json(cfg.output_dir / "halt.json", rep);
  }
  return rep;
}

// ---------------------------------------------------------------------------

namespace {

LinearVResult linear_core(const std::function<void(double, ScalarField&)>& sample,
                          const std::function<double(double)>& next_break, const ScalarField& v0, double T,
                          const LinearVOptions& opt) {
  if (!(T > 0.0)) throw InvalidInput("linear_v_solve: T must be > 0");
  if (!(opt.safety > 0.0 && opt.safety < 1.0)) throw InvalidInput("linear_v_solve: safety must lie in (0,1)");
  v0.check_finite("v0");
  const Grid& g = v0.grid();
  const KellerSegelStepper geometry(v0.grid_ptr(), DtPolicy{}, std::numeric_limits<double>::infinity());
  // Largest diffusive rate over cells: reuse the stepper's per-cell rates via a zero state.
  double dmax = 0.0;
  {
    SimState probe{ScalarField(v0.grid_ptr()), ScalarField(v0.grid_ptr())};
    const double dt0 = geometry.stable_dt(probe);  // safety / (Dmax + 1)
    dmax = geometry.policy().safety / dt0 - 1.0;
  }
  double dt_stable = opt.safety / (dmax + 1.0);
  if (opt.max_dt > 0.0) dt_stable = std::min(dt_stable, opt.max_dt);

  LinearVResult res;
  res.max_dt = 0.0;
  ScalarField v = v0;
  ScalarField f(v0.grid_ptr());
  double t = 0.0;
  std::int64_t next_snap = 1;
  if (opt.snapshot_every > 0.0) res.snapshots.push_back({0.0, ScalarField(), v});
  while (true) {
    sample(t, f);
    f.check_finite("forcing");
    const ScalarField lap = laplacian(v);
    res.times.push_back(t);
    res.lap_norm.push_back(lp_norm(lap, opt.q));
    res.forcing_norm.push_back(lp_norm(f, opt.q));
    if (t >= T) break;
    double target = std::min(T, next_break(t));
    if (opt.snapshot_every > 0.0) target = std::min(target, next_snap * opt.snapshot_every);
    const bool clipped = target - t <= dt_stable;
    const double dt = clipped ? target - t : dt_stable;
    auto vv = v.values();
    for (std::size_t c = 0; c < vv.size(); ++c) vv[c] += dt * (lap[c] - vv[c] + f[c]);
    t = clipped ? target : t + dt;
    res.max_dt = std::max(res.max_dt, dt);
    v.check_finite("v");
    if (opt.snapshot_every > 0.0 && t >= next_snap * opt.snapshot_every) {
      res.snapshots.push_back({t, ScalarField(), v});
      ++next_snap;
    }
  }
  (void)g;
  res.final_v = std::move(v);
  return res;
}

}  // namespace

LinearVResult linear_v_solve(const ForcingSeries& f, const ScalarField& v0, double T, const LinearVOptions& opt) {
  if (f.times.empty() || f.times.size() != f.values.size()) throw InvalidInput("linear_v_solve: malformed forcing series");
  if (f.times.front() > 0.0) throw InvalidInput("linear_v_solve: forcing must start at t <= 0");
  for (std::size_t k = 1; k < f.times.size(); ++k) {
    if (!(f.times[k] > f.times[k - 1])) throw InvalidInput("linear_v_solve: forcing times must increase");
  }
  for (const auto& x : f.values) {
    if (!x.grid().same_layout(v0.grid())) throw InvalidInput("linear_v_solve: forcing grid mismatch");
  }
  const auto locate = [&f](double t) {
    const auto it = std::upper_bound(f.times.begin(), f.times.end(), t);
    return static_cast<std::size_t>(it - f.times.begin()) - 1;
  };
  const auto sample = [&](double t, ScalarField& out) {
    const auto& src = f.values[locate(t)];
    std::copy(src.values().begin(), src.values().end(), out.values().begin());
  };
  const auto next_break = [&](double t) {
    const std::size_t k = locate(t);
    return k + 1 < f.times.size() ? f.times[k + 1] : std::numeric_limits<double>::infinity();
  };
  return linear_core(sample, next_break, v0, T, opt);
}

LinearVResult linear_v_solve(const ForcingFunction& f, const ScalarField& v0, double T, const LinearVOptions& opt) {
  if (!f) throw InvalidInput("linear_v_solve: empty forcing");
  return linear_core(f, [](double) { return std::numeric_limits<double>::infinity(); }, v0, T, opt);
}

}  // namespace kslab
