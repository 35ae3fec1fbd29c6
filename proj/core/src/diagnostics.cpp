#include "kslab/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/special_functions/beta.hpp>

#include "kslab/error.hpp"
#include "kslab/parallel.hpp"
#include "kslab/summation.hpp"

namespace kslab {

namespace {

void check_radii(const Grid& g, std::span<const double> radii) {
  if (radii.empty()) throw InvalidInput("concentration: empty radius ladder");
  const double h = g.is_radial() ? g.hx() : std::min(g.hx(), g.hy());
  for (double r : radii) {
    if (!(r >= 2.0 * h * (1.0 - 1e-12))) throw InvalidInput("concentration: radii must be positive and span >= 2 cells");
  }
  for (std::size_t k = 1; k < radii.size(); ++k) {
    if (!(radii[k] > radii[k - 1])) throw InvalidInput("concentration: radii must increase");
  }
}

// Fraction of the sphere of radius s (centered at the origin) lying within
// distance rho of a point at distance c from the origin.
double cap_fraction(int N, double s, double c, double rho) {
  if (c == 0.0) return s <= rho ? 1.0 : 0.0;
  const double kappa = (s * s + c * c - rho * rho) / (2.0 * s * c);
  if (kappa <= -1.0) return 1.0;
  if (kappa >= 1.0) return 0.0;
  switch (N) {
    case 1: return 0.5;  // only the near point of {+s, -s} is inside
    case 2: return std::acos(kappa) / std::numbers::pi;
    case 3: return 0.5 * (1.0 - kappa);
    default: {
      const double a = 0.5 * (N - 1);
      return boost::math::ibeta(a, a, 0.5 * (1.0 - kappa));
    }
  }
}

ConcentrationAtTime radial_concentration(const ScalarField& u, std::span<const double> radii) {
  const Grid& g = u.grid();
  const int n = g.nx();
  const int N = g.dimension();
  std::vector<double> w(n);
  for (int k = 0; k < n; ++k) w[k] = std::pow(std::abs(u[k]), 0.5 * N) * g.area(k);
  ConcentrationAtTime out;
  out.values.assign(radii.size(), 0.0);
  out.centers.assign(radii.size(), {0.0, 0.0});
  for (int ic = -1; ic < n; ++ic) {
    const double c = ic < 0 ? 0.0 : g.center_x(ic);
    for (std::size_t r = 0; r < radii.size(); ++r) {
      double sum = 0.0;
      for (int k = 0; k < n; ++k) sum += w[k] * cap_fraction(N, g.center_x(k), c, radii[r]);
      if (sum > out.values[r]) {
        out.values[r] = sum;
        out.centers[r] = {c, 0.0};
      }
    }
  }
  return out;
}

ConcentrationAtTime rect_concentration(const ScalarField& u, std::span<const double> radii) {
  const Grid& g = u.grid();
  const int nx = g.nx(), ny = g.ny();
  const double hx = g.hx(), hy = g.hy();
  const double p = 0.5 * g.dimension();
  // Row prefix sums of u^{N/2} * area.
  std::vector<double> prefix(static_cast<std::size_t>(ny) * (nx + 1), 0.0);
  for (int j = 0; j < ny; ++j) {
    double* row = &prefix[static_cast<std::size_t>(j) * (nx + 1)];
    for (int i = 0; i < nx; ++i) {
      const std::size_t c = g.index(i, j);
      row[i + 1] = row[i] + std::pow(std::abs(u[c]), p) * g.area(c);
    }
  }
  const double rmax = radii.back();
  const int jspan = std::min(ny - 1, static_cast<int>(std::floor(rmax / hy * (1.0 + 1e-12))));
  // Half-widths per radius and row offset.
  std::vector<int> half(radii.size() * (jspan + 1), -1);
  for (std::size_t r = 0; r < radii.size(); ++r) {
    const double rr = radii[r] * radii[r] * (1.0 + 1e-12);
    for (int dj = 0; dj <= jspan; ++dj) {
      const double dy = dj * hy;
      if (dy * dy > rr) continue;
      half[r * (jspan + 1) + dj] = static_cast<int>(std::floor(std::sqrt(rr - dy * dy) / hx * (1.0 + 1e-12)));
    }
  }
  std::vector<ConcentrationAtTime> per_row(ny);
  parallel_for(ny, [&](std::size_t jc_) {
    const int jc = static_cast<int>(jc_);
    auto& best = per_row[jc_];
    best.values.assign(radii.size(), 0.0);
    best.centers.assign(radii.size(), {g.center_x(0), g.center_y(jc)});
    for (int ic = 0; ic < nx; ++ic) {
      for (std::size_t r = 0; r < radii.size(); ++r) {
        // Fixed row order (-jspan..jspan) for every radius keeps C monotone.
        double sum = 0.0;
        for (int dj = -jspan; dj <= jspan; ++dj) {
          const int j = jc + dj;
          if (j < 0 || j >= ny) continue;
          const int hw = half[r * (jspan + 1) + std::abs(dj)];
          if (hw < 0) continue;
          const int lo = std::max(0, ic - hw), hi = std::min(nx, ic + hw + 1);
          const double* row = &prefix[static_cast<std::size_t>(j) * (nx + 1)];
          sum += row[hi] - row[lo];
        }
        if (sum > best.values[r]) {
          best.values[r] = sum;
          best.centers[r] = {g.center_x(ic), g.center_y(jc)};
        }
      }
    }
  });
  ConcentrationAtTime out;
  out.values.assign(radii.size(), 0.0);
  out.centers.assign(radii.size(), {g.center_x(0), g.center_y(0)});
  for (const auto& row : per_row) {
    for (std::size_t r = 0; r < radii.size(); ++r) {
      if (row.values[r] > out.values[r]) {
        out.values[r] = row.values[r];
        out.centers[r] = row.centers[r];
      }
    }
  }
  return out;
}

double interp_table(const SuperlinearTable& t, double s) {
  const auto& xs = t.s;
  std::size_t k = std::upper_bound(xs.begin(), xs.end(), s) - xs.begin();
  k = std::clamp<std::size_t>(k, 1, xs.size() - 1);
  const double x0 = xs[k - 1], x1 = xs[k];
  return t.f[k - 1] + (t.f[k] - t.f[k - 1]) * (s - x0) / (x1 - x0);
}

}  // namespace

ConcentrationAtTime concentration_at(const ScalarField& u, std::span<const double> radii) {
  check_radii(u.grid(), radii);
  u.check_finite("u");
  return u.grid().is_radial() ? radial_concentration(u, radii) : rect_concentration(u, radii);
}

ConcentrationReport concentration_function(std::span<const ScalarField> snapshots, std::span<const double> times,
                                           std::span<const double> radii) {
  if (snapshots.size() != times.size()) throw InvalidInput("concentration: snapshot and time counts differ");
  if (snapshots.empty()) throw InvalidInput("concentration: no snapshots");
  check_radii(snapshots.front().grid(), radii);
  ConcentrationReport rep;
  rep.radii.assign(radii.begin(), radii.end());
  rep.times.assign(times.begin(), times.end());
  std::vector<ConcentrationAtTime> per(snapshots.size());
  for (std::size_t k = 0; k < snapshots.size(); ++k) per[k] = concentration_at(snapshots[k], radii);
  rep.sup_over_time.assign(radii.size(), 0.0);
  for (auto& c : per) {
    for (std::size_t r = 0; r < radii.size(); ++r) rep.sup_over_time[r] = std::max(rep.sup_over_time[r], c.values[r]);
    rep.values.push_back(std::move(c.values));
    rep.centers.push_back(std::move(c.centers));
  }
  return rep;
}

double ConcentrationReport::center_wander() const {
  double d = 0.0;
  for (std::size_t a = 0; a < centers.size(); ++a) {
    for (std::size_t b = a + 1; b < centers.size(); ++b) {
      if (centers[a].empty() || centers[b].empty()) continue;
      d = std::max(d, std::hypot(centers[a][0].first - centers[b][0].first,
                                 centers[a][0].second - centers[b][0].second));
    }
  }
  return d;
}

SuperlinearResult superlinear_functional(const ScalarField& u, SuperlinearKind kind, const SuperlinearTable& table) {
  u.require_nonnegative("u");
  const Grid& g = u.grid();
  const double p = 0.5 * g.dimension();
  SuperlinearResult res;
  if (kind == SuperlinearKind::custom) {
    if (table.s.size() < 2 || table.s.size() != table.f.size()) {
      throw InvalidInput("superlinear: custom table needs >= 2 matching (s, f) nodes");
    }
    for (std::size_t k = 1; k < table.s.size(); ++k) {
      if (!(table.s[k] > table.s[k - 1]) || !(table.f[k] >= table.f[k - 1])) {
        throw InvalidInput("superlinear: custom table must be monotone (s increasing, f nondecreasing)");
      }
    }
    const double smax = table.s.back();
    res.growth_ratio = smax > 0.0 ? table.f.back() / std::pow(smax, p) : 0.0;
  }
  std::vector<double> terms(u.size());
  for (std::size_t c = 0; c < u.size(); ++c) {
    const double x = u[c];
    double f = 0.0;
    switch (kind) {
      case SuperlinearKind::u_log: f = std::pow(x, p) * std::log(x + std::numbers::e); break;
      case SuperlinearKind::u_loglog: f = std::pow(x, p) * std::log(std::log(x + std::numbers::e)); break;
      case SuperlinearKind::custom: f = interp_table(table, x); break;
    }
    terms[c] = f * g.area(c);
  }
  res.value = pairwise_sum(terms);
  return res;
}

std::string to_string(Classification c) {
  switch (c) {
    case Classification::bounded: return "bounded";
    case Classification::blowup_suspected: return "blowup_suspected";
    case Classification::withheld: return "withheld";
  }
  return "withheld";
}

RunVerdict classify_run(const RunReport& report, const ClassifierThresholds& th) {
  RunVerdict v;
  v.halt = report.final_state.halt;
  const auto& cr = report.concentration;
  if (report.series.empty() || cr.values.empty() || v.halt == HaltReason::none) {
    v.classification = Classification::withheld;
    v.reason = "incomplete time series (run did not reach t_end or a halt)";
    return v;
  }
  const SeriesRow& first = report.series.front();
  const SeriesRow& last = report.series.back();
  if (first.u_inf > 0.0) {
    v.growth_factor = last.u_inf / first.u_inf;
  } else {
    v.growth_factor = last.u_inf > 0.0 ? std::numeric_limits<double>::infinity() : 1.0;
  }
  const auto& c_last = cr.values.back();
  v.persistence = c_last.back() > 0.0 ? c_last.front() / c_last.back() : 0.0;
  v.inf_sup_concentration = *std::min_element(cr.sup_over_time.begin(), cr.sup_over_time.end());
  v.delta01_first = first.delta01;
  v.delta01_last = last.delta01;
  v.center_wander = cr.center_wander();

  if (v.halt == HaltReason::nan) {
    v.classification = Classification::withheld;
    v.reason = "run halted on NaN";
    return v;
  }
  const bool halted = v.halt == HaltReason::dt_floor || v.halt == HaltReason::value_cap;
  const bool grew = v.growth_factor >= th.growth;
  const bool persists = v.persistence >= th.persistence;
  if (halted && grew && persists) {
    v.classification = Classification::blowup_suspected;
    v.reason = "halted on " + to_string(v.halt) + ", sup norm grew and concentration persists at the smallest radius";
  } else {
    v.classification = Classification::bounded;
    if (!halted) {
      v.reason = "reached t_end";
    } else if (!grew) {
      v.reason = "halted on " + to_string(v.halt) + " without sup-norm growth";
    } else {
      v.reason = "halted on " + to_string(v.halt) + " but concentration does not persist";
    }
  }
  return v;
}

RunReport subsample(const RunReport& report) {
  RunReport out = report;
  const auto keep = [](std::size_t k, std::size_t n) { return k % 2 == 0 || k + 1 == n; };
  out.series.clear();
  for (std::size_t k = 0; k < report.series.size(); ++k) {
    if (keep(k, report.series.size())) out.series.push_back(report.series[k]);
  }
  const auto& cr = report.concentration;
  auto& oc = out.concentration;
  oc.times.clear();
  oc.values.clear();
  oc.centers.clear();
  oc.sup_over_time.assign(cr.radii.size(), 0.0);
  for (std::size_t k = 0; k < cr.times.size(); ++k) {
    if (!keep(k, cr.times.size())) continue;
    oc.times.push_back(cr.times[k]);
    oc.values.push_back(cr.values[k]);
    oc.centers.push_back(cr.centers[k]);
    for (std::size_t r = 0; r < cr.radii.size(); ++r) oc.sup_over_time[r] = std::max(oc.sup_over_time[r], cr.values[k][r]);
  }
  return out;
}

EquiProfile critical_family_profile(const RunReport& report, std::span<const double> ladder) {
  if (report.snapshots.empty()) throw InvalidInput("family profile: run has no snapshots");
  std::vector<ScalarField> fields;
  fields.reserve(report.snapshots.size());
  for (const auto& s : report.snapshots) fields.push_back(s.u.abs_pow(0.5 * s.u.grid().dimension()));
  return family_profile(fields, 1.0, ladder, "u^{N/2}(t)");
}

}  // namespace kslab
