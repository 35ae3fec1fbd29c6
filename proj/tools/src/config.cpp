#include "config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>

#include "kslab/error.hpp"
#include "kslab/snapshot.hpp"

namespace kslab::cli {

namespace fs = std::filesystem;

json load_config(const fs::path& path, const std::string& command) {
  std::ifstream is(path);
  if (!is) throw IoFailure("cannot open config " + path.string());
  json cfg;
  try {
    cfg = json::parse(is);
  } catch (const json::parse_error& e) {
    throw InvalidInput("config " + path.string() + ": " + e.what());
  }
  check_schema(cfg, command);
  return cfg;
}

void check_schema(const json& cfg, const std::string& command) {
  if (!cfg.is_object()) throw InvalidInput("config: top level must be an object");
  const std::string want = "kslab/" + command + "/1";
  if (!cfg.contains("schema")) throw InvalidInput("config: missing \"schema\" (expected \"" + want + "\")");
  if (!cfg["schema"].is_string() || cfg["schema"].get<std::string>() != want) {
    throw InvalidInput("config: schema " + cfg["schema"].dump() + " does not match \"" + want + "\"");
  }
}

double get_number(const json& j, const std::string& key) {
  if (!j.contains(key)) throw InvalidInput("config: missing key \"" + key + "\"");
  if (!j[key].is_number()) throw InvalidInput("config: \"" + key + "\" must be a number");
  return j[key].get<double>();
}

double get_number(const json& j, const std::string& key, double fallback) {
  return j.contains(key) ? get_number(j, key) : fallback;
}

int get_int(const json& j, const std::string& key, int fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number_integer()) throw InvalidInput("config: \"" + key + "\" must be an integer");
  return j[key].get<int>();
}

bool get_bool(const json& j, const std::string& key, bool fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_boolean()) throw InvalidInput("config: \"" + key + "\" must be true or false");
  return j[key].get<bool>();
}

std::string get_string(const json& j, const std::string& key, const std::string& fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_string()) throw InvalidInput("config: \"" + key + "\" must be a string");
  return j[key].get<std::string>();
}

std::vector<double> get_numbers(const json& j, const std::string& key, const std::vector<double>& fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_array()) throw InvalidInput("config: \"" + key + "\" must be an array of numbers");
  std::vector<double> out;
  for (const auto& x : j[key]) {
    if (!x.is_number()) throw InvalidInput("config: \"" + key + "\" must be an array of numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

double get_extended(const json& j, const std::string& key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (j[key].is_string()) {
    const auto s = j[key].get<std::string>();
    if (s == "inf" || s == "infinity") return std::numeric_limits<double>::infinity();
    throw InvalidInput("config: \"" + key + "\" must be a number or \"inf\"");
  }
  return get_number(j, key);
}

InterpParams parse_params(const json& j) {
  if (!j.is_object()) throw InvalidInput("config: params must be an object");
  InterpParams p;
  p.N = get_int(j, "N", 2);
  p.r = get_number(j, "r");
  p.q = get_number(j, "q");
  if (j.contains("theta") && !j["theta"].is_null()) p.theta = get_number(j, "theta");
  return p;
}

GeometrySpec parse_geometry(const json& j) {
  if (!j.is_object()) throw InvalidInput("config: geometry must be an object");
  GeometrySpec g;
  const auto kind = get_string(j, "kind", "rectangle");
  if (kind == "rectangle") {
    g.kind = GridKind::rectangle;
    g.lx = get_number(j, "lx", 1.0);
    g.ly = get_number(j, "ly", 1.0);
    g.nx = get_int(j, "nx", 32);
    g.ny = get_int(j, "ny", g.nx);
  } else if (kind == "radial") {
    g.kind = GridKind::radial;
    g.radius = get_number(j, "radius", 1.0);
    g.cells = get_int(j, "cells", 64);
    g.dimension = get_int(j, "dimension", 2);
  } else {
    throw InvalidInput("config: geometry kind must be \"rectangle\" or \"radial\"");
  }
  return g;
}

Bump parse_bump(const json& j) {
  Bump b;
  b.cx = get_number(j, "cx", b.cx);
  b.cy = get_number(j, "cy", b.cy);
  b.radius = get_number(j, "radius", b.radius);
  b.amplitude = get_number(j, "amplitude", b.amplitude);
  return b;
}

EigenSum parse_eigen_sum(const json& j) {
  EigenSum s;
  s.offset = get_number(j, "offset", 0.0);
  if (j.contains("terms")) {
    if (!j["terms"].is_array()) throw InvalidInput("config: eigen terms must be an array");
    for (const auto& t : j["terms"]) {
      EigenTerm e;
      e.mx = get_int(t, "mx", 1);
      e.my = get_int(t, "my", 0);
      e.amplitude = get_number(t, "amplitude", 1.0);
      e.omega = get_number(t, "omega", 0.0);
      e.phase = get_number(t, "phase", 0.0);
      if (e.mx < 0 || e.my < 0) throw InvalidInput("config: eigen modes must be >= 0");
      s.terms.push_back(e);
    }
  }
  return s;
}

namespace {

fs::path resolve(const fs::path& base, const std::string& p) {
  const fs::path path(p);
  return path.is_absolute() ? path : base / path;
}

double bump_mass(const json& b) {
  if (b.contains("mass_pi")) return get_number(b, "mass_pi") * std::numbers::pi;
  return get_number(b, "mass");
}

}  // namespace

InitialData parse_initial(const json& j, const fs::path& base) {
  if (!j.is_object()) throw InvalidInput("config: initial data must be an object");
  InitialData d;
  const auto kind = get_string(j, "kind", "constant");
  if (kind == "constant") {
    d.kind = InitialData::Kind::constant;
    d.value = get_number(j, "value", 1.0);
  } else if (kind == "bumps") {
    d.kind = InitialData::Kind::bumps;
    d.value = get_number(j, "background", 0.0);
    if (!j.contains("bumps") || !j["bumps"].is_array()) throw InvalidInput("config: bumps must be an array");
    for (const auto& b : j["bumps"]) {
      InitialBump ib;
      ib.mass = bump_mass(b);
      ib.cx = get_number(b, "cx", 0.5);
      ib.cy = get_number(b, "cy", 0.5);
      ib.width = get_number(b, "width");
      d.bumps.push_back(ib);
    }
  } else if (kind == "cosine") {
    d.kind = InitialData::Kind::cosine;
    d.value = get_number(j, "value", 1.0);
    d.amplitude = get_number(j, "amplitude", 0.0);
    d.mode_x = get_int(j, "mode_x", 1);
    d.mode_y = get_int(j, "mode_y", 0);
  } else if (kind == "file") {
    d.kind = InitialData::Kind::file;
    d.file = resolve(base, get_string(j, "path", ""));
  } else {
    throw InvalidInput("config: initial data kind must be constant, bumps, cosine or file");
  }
  return d;
}

SolverConfig parse_solver_config(const json& cfg, const fs::path& base) {
  SolverConfig c;
  if (!cfg.contains("geometry")) throw InvalidInput("config: missing key \"geometry\"");
  c.geometry = parse_geometry(cfg["geometry"]);
  c.t_end = get_number(cfg, "t_end");
  if (cfg.contains("dt")) {
    const auto& d = cfg["dt"];
    c.dt.safety = get_number(d, "safety", c.dt.safety);
    c.dt.dt_floor = get_number(d, "dt_floor", c.dt.dt_floor);
    c.dt.value_cap_factor = get_number(d, "value_cap_factor", c.dt.value_cap_factor);
    c.dt.saturation_fraction = get_number(d, "saturation_fraction", c.dt.saturation_fraction);
    c.dt.value_cap = get_number(d, "value_cap", c.dt.value_cap);
  }
  if (!cfg.contains("u0")) throw InvalidInput("config: missing key \"u0\"");
  c.u0 = parse_initial(cfg["u0"], base);
  if (cfg.contains("v0")) {
    c.v0 = parse_initial(cfg["v0"], base);
  } else {
    c.v0.kind = InitialData::Kind::constant;
    c.v0.value = 0.0;
  }
  if (cfg.contains("monitor")) {
    const auto& m = cfg["monitor"];
    c.monitor.every = get_number(m, "every", c.monitor.every);
    c.monitor.snapshot_every = get_number(m, "snapshot_every", c.monitor.snapshot_every);
    c.monitor.lp = get_numbers(m, "lp", c.monitor.lp);
    c.monitor.radii_cells = get_numbers(m, "radii_cells", c.monitor.radii_cells);
  }
  if (cfg.contains("max_steps")) {
    if (!cfg["max_steps"].is_number_integer()) throw InvalidInput("config: \"max_steps\" must be an integer");
    c.max_steps = cfg["max_steps"].get<std::int64_t>();
  }
  c.validate();
  return c;
}

ScalarField parse_field(const json& j, const fs::path& base) {
  if (!j.is_object()) throw InvalidInput("config: field must be an object");
  if (j.contains("file")) return read_snapshot(resolve(base, get_string(j, "file", "")));
  if (!j.contains("grid")) throw InvalidInput("config: field needs \"file\" or \"grid\"");
  const GridPtr grid = parse_geometry(j["grid"]).build();
  if (j.contains("bump")) return sample_bump(grid, parse_bump(j["bump"]));
  if (j.contains("eigen")) return parse_eigen_sum(j["eigen"]).at(grid, get_number(j, "t", 0.0));
  if (j.contains("constant")) return ScalarField(grid, get_number(j, "constant"));
  throw InvalidInput("config: field needs one of bump, eigen, constant");
}

json to_json(const ExponentSet& e) {
  return json{{"p", e.p},   {"q0", e.q0},           {"a", e.a},
              {"b", e.b},   {"rhs_exp1", e.rhs_exp1}, {"sobolev_s", e.sobolev_s},
              {"exact", e.exact}};
}

namespace {

json initial_json(const InitialData& d) {
  switch (d.kind) {
    case InitialData::Kind::constant: return {{"kind", "constant"}, {"value", d.value}};
    case InitialData::Kind::cosine:
      return {{"kind", "cosine"}, {"value", d.value}, {"amplitude", d.amplitude}, {"mode_x", d.mode_x},
              {"mode_y", d.mode_y}};
    case InitialData::Kind::file: return {{"kind", "file"}, {"path", d.file.string()}};
    case InitialData::Kind::bumps: {
      json bs = json::array();
      for (const auto& b : d.bumps) bs.push_back({{"mass", b.mass}, {"cx", b.cx}, {"cy", b.cy}, {"width", b.width}});
      return {{"kind", "bumps"}, {"background", d.value}, {"bumps", bs}};
    }
  }
  return {};
}

}  // namespace

json to_json(const SolverConfig& c) {
  json geo;
  if (c.geometry.kind == GridKind::radial) {
    geo = {{"kind", "radial"}, {"radius", c.geometry.radius}, {"cells", c.geometry.cells},
           {"dimension", c.geometry.dimension}};
  } else {
    geo = {{"kind", "rectangle"}, {"lx", c.geometry.lx}, {"ly", c.geometry.ly}, {"nx", c.geometry.nx},
           {"ny", c.geometry.ny}};
  }
  return {{"geometry", geo},
          {"t_end", c.t_end},
          {"dt",
           {{"safety", c.dt.safety},
            {"dt_floor", c.dt.dt_floor},
            {"value_cap_factor", c.dt.value_cap_factor},
            {"saturation_fraction", c.dt.saturation_fraction},
            {"value_cap", c.dt.value_cap}}},
          {"u0", initial_json(c.u0)},
          {"v0", initial_json(c.v0)},
          {"monitor",
           {{"every", c.monitor.every},
            {"snapshot_every", c.monitor.snapshot_every},
            {"lp", c.monitor.lp},
            {"radii_cells", c.monitor.radii_cells}}},
          {"max_steps", c.max_steps}};
}

}  // namespace kslab::cli
