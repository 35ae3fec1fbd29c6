#include "kslab/equi.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include "kslab/error.hpp"

namespace kslab {

BathtubTable::BathtubTable(const ScalarField& f, double p) : p_(p) {
  if (!(p > 0.0)) throw InvalidInput("bathtub: p must be > 0");
  const std::size_t n = f.size();
  std::vector<double> dens(n);
  for (std::size_t c = 0; c < n; ++c) dens[c] = std::pow(std::fabs(f[c]), p);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return dens[a] > dens[b]; });

  density_.resize(n);
  cum_area_.assign(n + 1, 0.0);
  cum_mass_.assign(n + 1, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t c = order[k];
    const double a = f.grid().area(c);
    density_[k] = dens[c];
    cum_area_[k + 1] = cum_area_[k] + a;
    cum_mass_[k + 1] = cum_mass_[k] + dens[c] * a;
  }
  min_cell_area_ = f.grid().min_area();
}

double BathtubTable::modulus(double delta) const {
  if (!(delta > 0.0)) throw InvalidInput("bathtub_modulus: delta must be > 0");
  if (delta >= cum_area_.back()) return cum_mass_.back();
  // First k with cum_area_[k+1] > delta.
  const auto it = std::upper_bound(cum_area_.begin(), cum_area_.end(), delta);
  const std::size_t k = static_cast<std::size_t>(it - cum_area_.begin()) - 1;
  return cum_mass_[k] + density_[k] * (delta - cum_area_[k]);
}

double BathtubTable::inverse(double eps) const {
  if (cum_mass_.back() <= eps) return cum_area_.back();
  const auto it = std::upper_bound(cum_mass_.begin(), cum_mass_.end(), eps);
  const std::size_t k = static_cast<std::size_t>(it - cum_mass_.begin()) - 1;
  // cum_mass_[k] <= eps < cum_mass_[k+1] implies density_[k] > 0.
  const double d = cum_area_[k] + (eps - cum_mass_[k]) / density_[k];
  return std::min(d, cum_area_[k + 1]);
}

bool EquiProfile::any_unresolved() const {
  return std::any_of(unresolved.begin(), unresolved.end(), [](bool b) { return b; });
}

double EquiProfile::delta_at(double eps) const {
  for (std::size_t j = 0; j < eps_prime.size(); ++j) {
    if (eps_prime[j] == eps) return delta[j];
  }
  throw InvalidInput("EquiProfile: eps' not in ladder");
}

std::vector<double> default_eps_ladder() { return {0.5, 0.2, 0.1, 0.05, 0.02, 0.01}; }

double bathtub_modulus(const ScalarField& f, double p, double delta) {
  if (!(delta > 0.0)) throw InvalidInput("bathtub_modulus: delta must be > 0");
  return BathtubTable(f, p).modulus(delta);
}

ModulusCurve modulus_curve(const ScalarField& f, double p, int n_points, std::string source) {
  if (n_points < 2) throw InvalidInput("modulus_curve: need at least 2 points");
  const BathtubTable table(f, p);
  ModulusCurve c;
  c.p = p;
  c.source = std::move(source);
  const double lo = std::log(table.min_cell_area());
  const double hi = std::log(table.measure());
  c.delta.resize(n_points);
  c.mass.resize(n_points);
  for (int k = 0; k < n_points; ++k) {
    const double d = k == n_points - 1 ? table.measure() : std::exp(lo + (hi - lo) * k / (n_points - 1));
    c.delta[k] = d;
    c.mass[k] = table.modulus(d);
  }
  return c;
}

EquiProfile family_profile(std::span<const ScalarField> fields, double p, std::span<const double> ladder,
                           std::string family) {
  if (fields.empty()) throw InvalidInput("family_profile: empty family");
  const GridPtr& g0 = fields.front().grid_ptr();
  for (const auto& f : fields) {
    if (f.grid_ptr() != g0 && !f.grid().same_layout(*g0)) throw InvalidInput("family_profile: fields must share one grid");
  }
  std::vector<double> eps(ladder.begin(), ladder.end());
  if (eps.empty()) eps = default_eps_ladder();
  for (double e : eps) {
    if (!(e > 0.0 && e < 1.0)) throw InvalidInput("family_profile: eps' must lie in (0,1)");
  }
  std::sort(eps.begin(), eps.end());
  eps.erase(std::unique(eps.begin(), eps.end()), eps.end());

  EquiProfile prof;
  prof.family = std::move(family);
  prof.eps_prime = eps;
  prof.delta.assign(eps.size(), g0->measure());
  prof.unresolved.assign(eps.size(), false);
  for (const auto& f : fields) {
    const BathtubTable table(f, p);
    for (std::size_t j = 0; j < eps.size(); ++j) {
      const double d = table.inverse(eps[j]);
      if (d < table.min_cell_area()) {
        prof.unresolved[j] = true;
        prof.delta[j] = 0.0;
      } else if (!prof.unresolved[j]) {
        prof.delta[j] = std::min(prof.delta[j], d);
      }
    }
  }
  return prof;
}

bool check_membership(const ScalarField& f, const EquiProfile& profile, double p) {
  if (profile.eps_prime.size() != profile.delta.size()) throw InvalidInput("check_membership: malformed profile");
  const BathtubTable table(f, p);
  for (std::size_t j = 0; j < profile.eps_prime.size(); ++j) {
    const double d = profile.delta[j];
    if (d <= 0.0) continue;
    const double eps = profile.eps_prime[j];
    if (table.modulus(d) > eps * (1.0 + 1e-12)) return false;
  }
  return true;
}

namespace {

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void write_curve_csv(const std::filesystem::path& path, const ModulusCurve& c) {
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw IoFailure("cannot open " + path.string() + " for writing");
  os << "delta,modulus\n";
  for (std::size_t k = 0; k < c.delta.size(); ++k) os << g17(c.delta[k]) << ',' << g17(c.mass[k]) << '\n';
  if (!os) throw IoFailure("write failed: " + path.string());
}

void write_profile_csv(const std::filesystem::path& path, const EquiProfile& profile) {
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw IoFailure("cannot open " + path.string() + " for writing");
  os << "eps_prime,delta\n";
  for (std::size_t j = 0; j < profile.eps_prime.size(); ++j) {
    os << g17(profile.eps_prime[j]) << ',' << g17(profile.delta[j]) << '\n';
  }
  if (!os) throw IoFailure("write failed: " + path.string());
}

EquiProfile read_profile_csv(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw IoFailure("cannot open " + path.string());
  std::string line;
  if (!std::getline(is, line) || line.rfind("eps_prime,delta", 0) != 0) throw IoFailure("profile csv: missing header");
  EquiProfile prof;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw IoFailure("profile csv: malformed row");
    try {
      prof.eps_prime.push_back(std::stod(line.substr(0, comma)));
      prof.delta.push_back(std::stod(line.substr(comma + 1)));
    } catch (const std::exception&) {
      throw IoFailure("profile csv: malformed number");
    }
    prof.unresolved.push_back(prof.delta.back() == 0.0);
  }
  return prof;
}

}  // namespace kslab
