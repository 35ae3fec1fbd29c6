#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>

#include "kslab/kslab.hpp"

namespace kslab::cli {

namespace fs = std::filesystem;

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_json(const fs::path& path, const json& j) {
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw IoFailure("cannot open " + path.string() + " for writing");
  os << j.dump(2) << '\n';
  if (!os) throw IoFailure("write failed: " + path.string());
}

fs::path Context::artifact(const std::string& name) {
  artifacts.push_back(name);
  const fs::path p = out_dir / name;
  std::error_code ec;
  fs::create_directories(p.parent_path(), ec);
  if (ec) throw IoFailure("cannot create " + p.parent_path().string() + ": " + ec.message());
  return p;
}

namespace {

std::ofstream open_csv(const fs::path& path) {
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw IoFailure("cannot open " + path.string() + " for writing");
  return os;
}

void close_csv(std::ofstream& os, const fs::path& path) {
  os.flush();
  if (!os) throw IoFailure("write failed: " + path.string());
}

std::string label_eps(double e) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "eps=%g", e);
  return buf;
}

std::string label_num(const char* prefix, double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%s%g", prefix, v);
  return buf;
}

std::vector<ScalarField> parse_family(const json& fam, const GridPtr& grid, const InterpParams& params,
                                      const fs::path& base, std::uint64_t seed) {
  const auto kind = get_string(fam, "kind", "concentration");
  if (kind == "concentration") {
    const Bump b = fam.contains("base") ? parse_bump(fam["base"]) : Bump{0.5, 0.5, 0.4, 1.0};
    const auto lambdas = get_numbers(fam, "lambdas", {1, 2, 4, 8});
    return concentration_family(grid, b, lambdas, params);
  }
  if (kind == "eigen_random") {
    const int count = get_int(fam, "count", 20);
    const auto s = static_cast<std::uint64_t>(get_number(fam, "seed", static_cast<double>(seed)));
    auto sums = random_eigen_sums(count, s, get_int(fam, "max_terms", 4), get_int(fam, "max_mode", 3), 0.0);
    const double offset = get_number(fam, "offset", 0.0);
    std::vector<ScalarField> out;
    for (auto& e : sums) {
      e.offset = offset;
      out.push_back(e.at(grid, 0.0));
    }
    return out;
  }
  if (kind == "fields") {
    if (!fam.contains("fields") || !fam["fields"].is_array()) throw InvalidInput("config: family fields must be an array");
    std::vector<ScalarField> out;
    for (const auto& f : fam["fields"]) out.push_back(parse_field(f, base));
    return out;
  }
  throw InvalidInput("config: family kind must be concentration, eigen_random or fields");
}

}  // namespace

// ---------------------------------------------------------------------------

void run_exponents(Context& ctx) {
  const InterpParams params = parse_params(ctx.config.contains("params") ? ctx.config["params"] : ctx.config);
  const ExponentSet e = compute_exponents(params);
  json doc = {{"params", {{"N", params.N}, {"r", params.r}, {"q", params.q}}}, {"exponents", to_json(e)}};
  if (params.theta) doc["params"]["theta"] = *params.theta;
  write_json(ctx.artifact("exponents.json"), doc);
  ctx.summary = to_json(e);
  *ctx.out << to_key_value(e);
}

void run_verify_ineq(Context& ctx) {
  const auto& cfg = ctx.config;
  if (!cfg.contains("params")) throw InvalidInput("config: missing key \"params\"");
  const InterpParams params = parse_params(cfg["params"]);
  const ExponentSet e = compute_exponents(params);
  const GridPtr grid = parse_geometry(cfg.value("grid", json{{"kind", "rectangle"}, {"nx", 128}})).build();
  const auto fields = parse_family(cfg.value("family", json::object()), grid, params, ctx.base, ctx.seed);
  if (fields.empty()) throw InvalidInput("config: empty family");
  const auto epsilons = get_numbers(cfg, "epsilons", {0.1});

  const auto terms_path = ctx.artifact("terms.csv");
  auto os = open_csv(terms_path);
  os << "epsilon,member,lhs,t1,t2,t3,t4,required_c,holds\n";
  json per_eps = json::object();
  for (double eps : epsilons) {
    const double fitted = fit_c_epsilon(fields, params, eps);
    const double c_eps = get_number(cfg, "c_eps", fitted);
    const auto rep = check_interpolation(fields, params, eps, c_eps);
    for (std::size_t k = 0; k < rep.rows.size(); ++k) {
      const auto& r = rep.rows[k];
      os << g17(eps) << ',' << k << ',' << g17(r.lhs) << ',' << g17(r.t1) << ',' << g17(r.t2) << ',' << g17(r.t3)
         << ',' << g17(r.t4) << ',' << g17(r.required_c(eps)) << ',' << (r.holds ? 1 : 0) << '\n';
    }
    per_eps[label_eps(eps)] = {{"fitted_c", fitted}, {"c_eps", c_eps}, {"all_hold", rep.all_hold()}};
  }
  close_csv(os, terms_path);

  const auto gn_path = ctx.artifact("gn.csv");
  auto gs = open_csv(gn_path);
  gs << "member,gn_ratio,degenerate\n";
  for (std::size_t k = 0; k < fields.size(); ++k) {
    const auto g = gn_ratio(fields[k], params.N, e.p, params.q, params.r);
    gs << k << ',' << g17(g.ratio) << ',' << (g.degenerate ? 1 : 0) << '\n';
  }
  close_csv(gs, gn_path);

  ctx.summary = {{"exponents", to_json(e)}, {"members", fields.size()}, {"C_eps", per_eps}};
  write_json(ctx.artifact("report.json"), ctx.summary);
}

void run_modulus(Context& ctx) {
  const auto& cfg = ctx.config;
  if (!cfg.contains("fields") || !cfg["fields"].is_array() || cfg["fields"].empty()) {
    throw InvalidInput("config: \"fields\" must be a non-empty array");
  }
  const double p = get_number(cfg, "p", 1.0);
  const int points = get_int(cfg, "points", 24);
  std::vector<ScalarField> fields;
  json per_field = json::object();
  int k = 0;
  for (const auto& entry : cfg["fields"]) {
    fields.push_back(parse_field(entry, ctx.base));
    const std::string label = get_string(entry, "label", "field_" + std::to_string(k));
    const auto curve = modulus_curve(fields.back(), p, points, label);
    const std::string name = k == 0 ? get_string(cfg, "curve_name", "curve_0.csv") : "curve_" + std::to_string(k) + ".csv";
    write_curve_csv(ctx.artifact(name), curve);
    per_field[label] = {{"total", curve.mass.back()}, {"measure", curve.delta.back()}};
    ++k;
  }
  const auto ladder = get_numbers(cfg, "ladder", default_eps_ladder());
  const auto profile = family_profile(fields, p, ladder, get_string(cfg, "family", "fields"));
  write_profile_csv(ctx.artifact("profile.csv"), profile);
  json prof = json::object();
  for (std::size_t i = 0; i < profile.eps_prime.size(); ++i) {
    prof[label_eps(profile.eps_prime[i])] = profile.delta[i];
  }
  ctx.summary = {{"p", p}, {"fields", per_field}, {"delta", prof}, {"any_unresolved", profile.any_unresolved()}};
  if (cfg.contains("membership")) {
    const auto& m = cfg["membership"];
    const ScalarField f = parse_field(m.at("field"), ctx.base);
    const std::string ppath = get_string(m, "profile", "");
    const EquiProfile pr = ppath.empty() ? profile : read_profile_csv(fs::path(ppath).is_absolute() ? fs::path(ppath) : ctx.base / ppath);
    ctx.summary["member"] = check_membership(f, pr, p);
  }
  write_json(ctx.artifact("modulus.json"), ctx.summary);
}

void run_extend(Context& ctx) {
  const auto& cfg = ctx.config;
  if (!cfg.contains("field")) throw InvalidInput("config: missing key \"field\"");
  const ScalarField f = parse_field(cfg["field"], ctx.base);
  const double margin = get_number(cfg, "margin");
  const double p = get_number(cfg, "p", 1.0), q = get_number(cfg, "q", 2.0), r = get_number(cfg, "r", 2.0);
  const auto ext = extend_first_order(f, margin);
  const auto rep = extension_report(f, ext, p, q, r, get_int(cfg, "curve_points", 24));
  write_snapshot(ctx.artifact(get_string(cfg, "extended_name", "extended.ksf")), ext.values);
  write_snapshot(ctx.artifact("raw.ksf"), ext.raw);
  const auto path = ctx.artifact(get_string(cfg, "report_name", "report.csv"));
  auto os = open_csv(path);
  os << "delta,source_modulus,extended_modulus\n";
  for (std::size_t i = 0; i < rep.source_curve.delta.size(); ++i) {
    os << g17(rep.source_curve.delta[i]) << ',' << g17(rep.source_curve.mass[i]) << ','
       << g17(rep.extended_curve.mass[i]) << '\n';
  }
  close_csv(os, path);
  ctx.summary = {{"pad_x", ext.pad_x},
                 {"pad_y", ext.pad_y},
                 {"lq_ratio", rep.lq_ratio},
                 {"w1r_ratio", rep.w1r_ratio},
                 {"propagation_bound", rep.propagation_bound},
                 {"observed_factor", rep.observed_factor},
                 {"propagation_holds", rep.propagation_holds},
                 {"jump_value", rep.jumps.value},
                 {"jump_normal", rep.jumps.normal}};
  write_json(ctx.artifact("report.json"), ctx.summary);
}

namespace {

void write_concentration_csv(const fs::path& path, const ConcentrationReport& c) {
  auto os = open_csv(path);
  os << "t,rho,C,cx,cy\n";
  for (std::size_t t = 0; t < c.times.size(); ++t) {
    for (std::size_t r = 0; r < c.radii.size(); ++r) {
      os << g17(c.times[t]) << ',' << g17(c.radii[r]) << ',' << g17(c.values[t][r]) << ','
         << g17(c.centers[t][r].first) << ',' << g17(c.centers[t][r].second) << '\n';
    }
  }
  close_csv(os, path);
}

json verdict_json(const RunVerdict& v) {
  return {{"classification", to_string(v.classification)},
          {"reason", v.reason},
          {"halt", to_string(v.halt)},
          {"growth_factor", v.growth_factor},
          {"persistence", v.persistence},
          {"inf_sup_concentration", v.inf_sup_concentration},
          {"delta01_first", v.delta01_first},
          {"delta01_last", v.delta01_last},
          {"center_wander", v.center_wander}};
}

ClassifierThresholds parse_thresholds(const json& cfg) {
  ClassifierThresholds th;
  if (cfg.contains("classifier")) {
    th.growth = get_number(cfg["classifier"], "growth", th.growth);
    th.persistence = get_number(cfg["classifier"], "persistence", th.persistence);
  }
  return th;
}

}  // namespace

void run_simulate(Context& ctx) {
  SolverConfig cfg = parse_solver_config(ctx.config, ctx.base);
  cfg.output_dir = ctx.out_dir;
  const RunReport rep = simulate(cfg);
  ctx.artifacts.push_back("series.csv");
  ctx.artifacts.push_back("halt.json");
  ctx.artifacts.push_back("snapshots/index.csv");
  for (std::size_t k = 0; k < rep.snapshots.size(); ++k) {
    char name[64];
    std::snprintf(name, sizeof name, "snapshots/u_%06zu.ksf", k);
    ctx.artifacts.emplace_back(name);
    std::snprintf(name, sizeof name, "snapshots/v_%06zu.ksf", k);
    ctx.artifacts.emplace_back(name);
  }
  write_concentration_csv(ctx.artifact("concentration.csv"), rep.concentration);
  const RunVerdict v = classify_run(rep, parse_thresholds(ctx.config));
  write_json(ctx.artifact("verdict.json"), verdict_json(v));
  const auto& s = rep.final_state;
  ctx.summary = {{"halt", to_string(s.halt)},
                 {"t_halt", s.t},
                 {"steps", s.steps},
                 {"u_inf_final", max_norm(s.u)},
                 {"initial_peak", rep.initial_peak},
                 {"mass_initial", rep.series.front().mass},
                 {"mass_final", rep.series.back().mass},
                 {"negative_events", s.negative_events},
                 {"verdict", to_string(v.classification)}};
  if (s.halt == HaltReason::nan) ctx.exit_code = 3;
}

void run_linear_v(Context& ctx) {
  const auto& cfg = ctx.config;
  LinearVOptions opt;
  opt.safety = get_number(cfg, "safety", opt.safety);
  opt.q = get_number(cfg, "q", opt.q);
  opt.max_dt = get_number(cfg, "max_dt", opt.max_dt);
  opt.snapshot_every = get_number(cfg, "snapshot_every", opt.snapshot_every);
  LinearVResult res;
  if (cfg.contains("replay")) {
    const fs::path dir = fs::path(get_string(cfg, "replay", "")).is_absolute() ? fs::path(get_string(cfg, "replay", ""))
                                                                                 : ctx.base / get_string(cfg, "replay", "");
    const RunReport run = load_run(dir);
    ForcingSeries f;
    for (const auto& s : run.snapshots) {
      f.times.push_back(s.t);
      f.values.push_back(s.u);
    }
    const double T = get_number(cfg, "T", run.snapshots.back().t);
    res = linear_v_solve(f, run.snapshots.front().v, T, opt);
  } else {
    const GridPtr grid = parse_geometry(cfg.value("grid", json{{"kind", "rectangle"}, {"nx", 32}})).build();
    const EigenSum v0 = parse_eigen_sum(cfg.value("v0", json::object()));
    const EigenSum f = parse_eigen_sum(cfg.value("forcing", json::object()));
    const double T = get_number(cfg, "T");
    const EigenSampler sampler(f, grid);
    res = linear_v_solve(ForcingFunction(std::cref(sampler)), v0.at(grid, 0.0), T, opt);
  }
  const auto path = ctx.artifact("norms.csv");
  auto os = open_csv(path);
  os << "t,lap_norm,forcing_norm\n";
  for (std::size_t k = 0; k < res.times.size(); ++k) {
    os << g17(res.times[k]) << ',' << g17(res.lap_norm[k]) << ',' << g17(res.forcing_norm[k]) << '\n';
  }
  close_csv(os, path);
  for (std::size_t k = 0; k < res.snapshots.size(); ++k) {
    char name[64];
    std::snprintf(name, sizeof name, "snapshots/v_%06zu.ksf", k);
    write_snapshot(ctx.artifact(name), res.snapshots[k].v);
  }
  write_snapshot(ctx.artifact("v_final.ksf"), res.final_v);
  ctx.summary = {{"steps", res.times.size() - 1},
                 {"t_final", res.times.back()},
                 {"max_dt", res.max_dt},
                 {"lap_norm_final", res.lap_norm.back()},
                 {"int_v_final", integrate(res.final_v)}};
}

namespace {

struct Battery {
  int count = 20;
  std::uint64_t seed = 0;
  int max_terms = 4;
  int max_mode = 3;
  double max_omega = 2.0;
};

Battery parse_battery(const json& cfg, std::uint64_t seed) {
  Battery b;
  b.seed = seed;
  if (!cfg.contains("battery")) return b;
  const auto& j = cfg["battery"];
  b.count = get_int(j, "count", b.count);
  b.seed = static_cast<std::uint64_t>(get_number(j, "seed", static_cast<double>(seed)));
  b.max_terms = get_int(j, "max_terms", b.max_terms);
  b.max_mode = get_int(j, "max_mode", b.max_mode);
  b.max_omega = get_number(j, "max_omega", b.max_omega);
  return b;
}

std::vector<GridPtr> battery_grids(const json& cfg) {
  const json gj = cfg.value("grid", json{{"kind", "rectangle"}, {"nx", 16}});
  GeometrySpec g = parse_geometry(gj);
  if (g.kind != GridKind::rectangle) throw InvalidInput("config: batteries run on rectangle grids");
  std::vector<GridPtr> grids = {g.build()};
  if (get_bool(cfg, "refine", true)) {
    g.nx *= 2;
    g.ny *= 2;
    grids.push_back(g.build());
  }
  return grids;
}

EigenSum cosine_x() {
  EigenSum s;
  s.label = "cos_pi_x";
  s.terms.push_back(EigenTerm{1, 0, 1.0, 0.0, 0.0});
  return s;
}

}  // namespace

void run_regularity(Context& ctx) {
  const auto& cfg = ctx.config;
  RegularityOptions opt;
  opt.q = get_number(cfg, "q", opt.q);
  opt.r = get_number(cfg, "r", opt.r);
  opt.horizons = get_numbers(cfg, "horizons", opt.horizons);
  opt.weighted = get_bool(cfg, "weighted", opt.weighted);
  opt.safety = get_number(cfg, "safety", opt.safety);
  const Battery b = parse_battery(cfg, ctx.seed);
  const std::string v0_kind = get_string(cfg, "v0", "zero");
  if (v0_kind != "zero" && v0_kind != "random") throw InvalidInput("config: v0 must be \"zero\" or \"random\"");

  std::vector<RegularityCase> cases;
  const auto forcings = random_eigen_sums(b.count, b.seed, b.max_terms, b.max_mode, b.max_omega);
  const auto initials = random_eigen_sums(b.count, b.seed + 1, b.max_terms, b.max_mode, 0.0);
  for (int k = 0; k < b.count; ++k) {
    RegularityCase c;
    c.label = forcings[k].label;
    c.forcing = forcings[k];
    if (v0_kind == "random") c.v0 = initials[k];
    cases.push_back(std::move(c));
  }
  if (get_bool(cfg, "include_reference", true)) {
    RegularityCase one;
    one.label = "f_one_v0_zero";
    one.forcing.offset = 1.0;
    cases.push_back(one);
    RegularityCase eig;
    eig.label = "f_zero_v0_cos";
    eig.v0 = cosine_x();
    cases.push_back(eig);
  }

  const auto path = ctx.artifact("regularity.csv");
  auto os = open_csv(path);
  os << "grid_h,horizon,label,lhs,rhs,ratio\n";
  std::vector<std::vector<ConstantFitReport>> per_grid;
  for (const auto& grid : battery_grids(cfg)) {
    auto reps = maximal_regularity_check(grid, cases, opt);
    for (const auto& rep : reps) {
      for (const auto& s : rep.samples) {
        os << g17(rep.grid_h) << ',' << g17(rep.horizon) << ',' << s.label << ',' << g17(s.lhs) << ',' << g17(s.rhs)
           << ',' << g17(s.ratio) << '\n';
      }
    }
    per_grid.push_back(std::move(reps));
  }
  close_csv(os, path);

  json fitted = json::object();
  double t_change = 0.0;
  bool ok = true;
  for (const auto& reps : per_grid) {
    for (std::size_t h = 0; h < reps.size(); ++h) {
      fitted[label_num("h=", reps[h].grid_h)][label_num("T=", reps[h].horizon)] = reps[h].fitted_c;
      ok = ok && reps[h].ok();
      if (h > 0) {
        const double a = reps[h - 1].fitted_c, c = reps[h].fitted_c;
        const double m = std::max(a, c);
        if (m > 0.0) t_change = std::max(t_change, std::abs(a - c) / m);
      }
    }
  }
  double refine_change = 0.0;
  if (per_grid.size() == 2) {
    for (std::size_t h = 0; h < per_grid[0].size(); ++h) {
      attach_refinement(per_grid[0][h], per_grid[1][h]);
      refine_change = std::max(refine_change, per_grid[0][h].refinement_change);
    }
  }
  ctx.summary = {{"weighted", opt.weighted},
                 {"fitted_c", fitted},
                 {"horizon_change", t_change},
                 {"refinement_change", refine_change},
                 {"violations", !ok}};
  write_json(ctx.artifact("summary.json"), ctx.summary);
}

void run_embedding(Context& ctx) {
  const auto& cfg = ctx.config;
  const double alpha = get_number(cfg, "alpha", 4.0 / 3.0);
  const double s = get_extended(cfg, "s", 2.0);
  const Battery b = parse_battery(cfg, ctx.seed);
  auto sums = random_eigen_sums(b.count, b.seed, b.max_terms, b.max_mode, 0.0);
  if (get_bool(cfg, "include_reference", true)) sums.push_back(cosine_x());

  const auto path = ctx.artifact("embedding.csv");
  auto os = open_csv(path);
  os << "grid_h,label,lhs,rhs,ratio\n";
  std::vector<ConstantFitReport> reps;
  for (const auto& grid : battery_grids(cfg)) {
    std::vector<ScalarField> fields;
    std::vector<std::string> labels;
    for (const auto& e : sums) {
      fields.push_back(e.at(grid, 0.0));
      labels.push_back(e.label);
    }
    if (get_bool(cfg, "include_constant", true)) {
      fields.emplace_back(grid, 1.0);
      labels.emplace_back("constant");
    }
    auto rep = embedding_check(fields, alpha, s, labels);
    for (const auto& smp : rep.samples) {
      os << g17(rep.grid_h) << ',' << smp.label << ',' << g17(smp.lhs) << ',' << g17(smp.rhs) << ','
         << g17(smp.ratio) << '\n';
    }
    reps.push_back(std::move(rep));
  }
  close_csv(os, path);
  json fitted = json::object();
  for (const auto& r : reps) fitted[label_num("h=", r.grid_h)] = r.fitted_c;
  if (reps.size() == 2) attach_refinement(reps[0], reps[1]);
  ctx.summary = {{"alpha", alpha},
                 {"s", std::isinf(s) ? json("inf") : json(s)},
                 {"fitted_c", fitted},
                 {"refinement_change", reps[0].refinement_change}};
  write_json(ctx.artifact("summary.json"), ctx.summary);
}

// ---------------------------------------------------------------------------

std::vector<double> parse_radii(const std::string& text, double h) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw InvalidInput("radii: empty entry in '" + text + "'");
    bool cells = false;
    if (item.back() == 'h') {
      cells = true;
      item.pop_back();
    }
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw InvalidInput("radii: cannot parse '" + item + "'");
    }
    if (used != item.size()) throw InvalidInput("radii: cannot parse '" + item + "'");
    out.push_back(cells ? v * h : v);
  }
  if (out.empty()) throw InvalidInput("radii: empty list");
  return out;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

double to_double(const std::string& s, const fs::path& where) {
  try {
    return std::stod(s);
  } catch (const std::exception&) {
    throw IoFailure("malformed number '" + s + "' in " + where.string());
  }
}

}  // namespace

RunReport load_run(const fs::path& dir) {
  RunReport rep;
  const fs::path halt_path = dir / "halt.json";
  std::ifstream hs(halt_path);
  if (!hs) throw IoFailure("cannot open " + halt_path.string());
  json halt;
  try {
    halt = json::parse(hs);
  } catch (const json::parse_error& e) {
    throw IoFailure("malformed " + halt_path.string() + ": " + e.what());
  }
  rep.final_state.halt = halt_from_string(halt.value("halt", "none"));
  // non-finite numbers are stored as null
  const auto number = [&](const char* key) {
    return halt.contains(key) && halt[key].is_number() ? halt[key].get<double>() : 0.0;
  };
  rep.final_state.t = number("t");
  rep.final_state.steps = halt.value("steps", std::int64_t{0});
  rep.initial_peak = number("initial_peak");

  const fs::path series_path = dir / "series.csv";
  std::ifstream ss(series_path);
  if (!ss) throw IoFailure("cannot open " + series_path.string());
  std::string line;
  std::getline(ss, line);
  const auto header = split_csv_line(line);
  const auto col = [&](const std::string& name) {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw IoFailure("series.csv lacks column " + name);
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t ct = col("t"), cu = col("u_inf"), cd = col("delta_0.1"), cm = col("mass");
  while (std::getline(ss, line)) {
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != header.size()) throw IoFailure("series.csv: ragged row");
    SeriesRow r;
    r.t = to_double(f[ct], series_path);
    r.u_inf = to_double(f[cu], series_path);
    r.delta01 = to_double(f[cd], series_path);
    r.mass = to_double(f[cm], series_path);
    rep.series.push_back(r);
  }

  const fs::path index_path = dir / "snapshots" / "index.csv";
  std::ifstream is(index_path);
  if (!is) throw IoFailure("cannot open " + index_path.string());
  std::getline(is, line);
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 4) throw IoFailure("snapshot index: malformed row");
    Snapshot s;
    s.t = to_double(f[1], index_path);
    s.u = read_snapshot(dir / "snapshots" / f[2]);
    s.v = read_snapshot(dir / "snapshots" / f[3]);
    rep.snapshots.push_back(std::move(s));
  }
  if (rep.snapshots.empty()) throw IoFailure("run has no snapshots: " + dir.string());
  rep.dimension = rep.snapshots.front().u.grid().dimension();
  rep.final_state.u = rep.snapshots.back().u;
  rep.final_state.v = rep.snapshots.back().v;
  return rep;
}

void run_concentration(Context& ctx) {
  const auto& cfg = ctx.config;
  const std::string run = get_string(cfg, "run", "");
  if (run.empty()) throw InvalidInput("concentration: a run directory is required");
  const fs::path dir = fs::path(run).is_absolute() ? fs::path(run) : ctx.base / run;
  RunReport rep = load_run(dir);
  const Grid& g = rep.snapshots.front().u.grid();
  const double h = g.is_radial() ? g.hx() : std::min(g.hx(), g.hy());
  const auto radii = parse_radii(get_string(cfg, "radii", "4h,8h,16h,32h"), h);
  std::vector<ScalarField> us;
  std::vector<double> ts;
  for (const auto& s : rep.snapshots) {
    us.push_back(s.u);
    ts.push_back(s.t);
  }
  rep.concentration = concentration_function(us, ts, radii);
  write_concentration_csv(ctx.artifact("concentration.csv"), rep.concentration);
  const RunVerdict v = classify_run(rep, parse_thresholds(cfg));
  write_json(ctx.artifact("verdict.json"), verdict_json(v));
  json sup = json::object();
  for (std::size_t r = 0; r < radii.size(); ++r) sup[label_num("rho=", radii[r])] = rep.concentration.sup_over_time[r];
  ctx.summary = {{"verdict", to_string(v.classification)},
                 {"halt", to_string(v.halt)},
                 {"growth_factor", v.growth_factor},
                 {"persistence", v.persistence},
                 {"center_wander", v.center_wander},
                 {"sup_over_time", sup}};
}

// ---------------------------------------------------------------------------

namespace {

void flatten(const json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& rows) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), rows);
    }
  } else if (j.is_number_float()) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", j.get<double>());
    rows.emplace_back(prefix, buf);
  } else if (j.is_string()) {
    rows.emplace_back(prefix, j.get<std::string>());
  } else {
    rows.emplace_back(prefix, j.dump());
  }
}

}  // namespace

void print_report(const fs::path& dir, std::ostream& out) {
  const fs::path path = dir / "manifest.json";
  std::ifstream is(path);
  if (!is) throw IoFailure("no manifest in " + dir.string());
  json m;
  try {
    m = json::parse(is);
  } catch (const json::parse_error& e) {
    throw IoFailure("malformed manifest " + path.string() + ": " + e.what());
  }
  std::vector<std::pair<std::string, std::string>> rows;
  rows.emplace_back("command", m.value("command", "?"));
  rows.emplace_back("exit_code", std::to_string(m.value("exit_code", 0)));
  flatten(m.value("summary", json::object()), "", rows);
  std::size_t width = 0;
  for (const auto& r : rows) width = std::max(width, r.first.size());
  for (const auto& r : rows) out << std::left << std::setw(static_cast<int>(width) + 2) << r.first << r.second << '\n';
}

}  // namespace kslab::cli
