#include "kslab/apriori.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "kslab/error.hpp"
#include "kslab/parallel.hpp"
#include "kslab/random.hpp"

namespace kslab {

namespace {

double ratio_of(double lhs, double rhs) {
  if (lhs == 0.0) return 0.0;
  return lhs / rhs;
}

void finish_fit(ConstantFitReport& rep) {
  rep.fitted_c = 0.0;
  for (const auto& s : rep.samples) {
    if (s.rhs == 0.0 && s.lhs > 0.0) {
      rep.violations.push_back(s.label);
      continue;
    }
    rep.fitted_c = std::max(rep.fitted_c, s.ratio);
  }
}

// Trapezoid of g over [0, T] on nodes t, with g linear on the last partial interval.
double trapezoid_to(const std::vector<double>& t, const std::vector<double>& g, double T) {
  double sum = 0.0;
  for (std::size_t k = 1; k < t.size(); ++k) {
    if (t[k - 1] >= T) break;
    if (t[k] <= T) {
      sum += 0.5 * (t[k] - t[k - 1]) * (g[k] + g[k - 1]);
    } else {
      const double w = (T - t[k - 1]) / (t[k] - t[k - 1]);
      const double gT = g[k - 1] + w * (g[k] - g[k - 1]);
      sum += 0.5 * (T - t[k - 1]) * (gT + g[k - 1]);
    }
  }
  return sum;
}

}  // namespace

void attach_refinement(ConstantFitReport& coarse, const ConstantFitReport& fine) {
  coarse.refined_c = fine.fitted_c;
  const double m = std::max(coarse.fitted_c, fine.fitted_c);
  coarse.refinement_change = m > 0.0 ? std::abs(coarse.fitted_c - fine.fitted_c) / m : 0.0;
}

void EigenSum::sample(const Grid& g, double t, ScalarField& out) const {
  if (g.is_radial()) throw InvalidInput("eigen sum: rectangle grids only");
  if (!out.grid().same_layout(g)) throw InvalidInput("eigen sum: output grid mismatch");
  for (int j = 0; j < g.ny(); ++j) {
    const double y = (g.center_y(j) - g.y0()) / g.ly();
    for (int i = 0; i < g.nx(); ++i) {
      const double x = (g.center_x(i) - g.x0()) / g.lx();
      double v = offset;
      for (const auto& e : terms) {
        v += e.amplitude * std::cos(e.mx * std::numbers::pi * x) * std::cos(e.my * std::numbers::pi * y) *
             std::cos(e.omega * t + e.phase);
      }
      out.at(i, j) = v;
    }
  }
}

ScalarField EigenSum::at(GridPtr g, double t) const {
  ScalarField f(g);
  sample(*g, t, f);
  return f;
}

EigenSampler::EigenSampler(const EigenSum& sum, GridPtr grid) : sum_(sum) {
  for (const auto& e : sum_.terms) {
    EigenSum one;
    one.terms.push_back(EigenTerm{e.mx, e.my, 1.0, 0.0, 0.0});
    const ScalarField m = one.at(grid, 0.0);
    modes_.emplace_back(m.values().begin(), m.values().end());
  }
}

void EigenSampler::operator()(double t, ScalarField& out) const {
  auto v = out.values();
  std::fill(v.begin(), v.end(), sum_.offset);
  for (std::size_t k = 0; k < modes_.size(); ++k) {
    const auto& e = sum_.terms[k];
    const double c = e.amplitude * std::cos(e.omega * t + e.phase);
    const auto& m = modes_[k];
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += c * m[i];
  }
}

std::vector<EigenSum> random_eigen_sums(int count, std::uint64_t seed, int max_terms, int max_mode, double max_omega) {
  if (count < 0 || max_terms < 1 || max_mode < 0) throw InvalidInput("random eigen sums: bad battery size");
  Rng rng(seed);
  std::vector<EigenSum> out;
  for (int k = 0; k < count; ++k) {
    EigenSum s;
    s.label = "eigen_sum_" + std::to_string(k);
    const int n = rng.integer(1, max_terms);
    for (int m = 0; m < n; ++m) {
      EigenTerm e;
      e.mx = rng.integer(0, max_mode);
      e.my = rng.integer(0, max_mode);
      if (e.mx == 0 && e.my == 0) e.mx = 1;
      e.amplitude = rng.uniform(-1.0, 1.0);
      e.omega = rng.uniform(0.0, max_omega);
      e.phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
      s.terms.push_back(e);
    }
    out.push_back(std::move(s));
  }
  return out;
}

FitSample regularity_sample(const LinearVResult& run, const ScalarField& v0, double T, double q, double r,
                            bool weighted, std::string label) {
  if (run.times.empty() || T > run.times.back() * (1.0 + 1e-12)) {
    throw InvalidInput("regularity: trajectory shorter than the horizon");
  }
  const std::size_t n = run.times.size();
  std::vector<double> gl(n), gf(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double w = weighted ? std::exp(0.5 * r * run.times[k]) : 1.0;
    gl[k] = w * std::pow(run.lap_norm[k], r);
    gf[k] = w * std::pow(run.forcing_norm[k], r);
  }
  FitSample s;
  s.label = std::move(label);
  s.lhs = trapezoid_to(run.times, gl, T);
  s.rhs = trapezoid_to(run.times, gf, T) + std::pow(w2q_norm(v0, q), r);
  s.ratio = ratio_of(s.lhs, s.rhs);
  return s;
}

std::vector<ConstantFitReport> maximal_regularity_check(GridPtr grid, const std::vector<RegularityCase>& cases,
                                                        const RegularityOptions& opt) {
  if (!(opt.q > 1.0) || !std::isfinite(opt.q) || !(opt.r > 1.0) || !std::isfinite(opt.r)) {
    throw InvalidInput("regularity: q and r must lie in (1, inf)");
  }
  if (opt.horizons.empty()) throw InvalidInput("regularity: no horizons");
  for (double T : opt.horizons) {
    if (!(T > 0.0)) throw InvalidInput("regularity: horizons must be > 0");
  }
  if (cases.empty()) throw InvalidInput("regularity: empty battery");
  const double t_max = *std::max_element(opt.horizons.begin(), opt.horizons.end());
  LinearVOptions lo;
  lo.safety = opt.safety;
  lo.q = opt.q;
  lo.max_dt = opt.max_dt;

  std::vector<std::vector<FitSample>> per_case(cases.size());
  parallel_for(cases.size(), [&](std::size_t c) {
    const auto& cs = cases[c];
    const ScalarField v0 = cs.v0.at(grid, 0.0);
    const EigenSampler forcing(cs.forcing, grid);
    const auto run = linear_v_solve(ForcingFunction(std::cref(forcing)), v0, t_max, lo);
    for (double T : opt.horizons) {
      per_case[c].push_back(regularity_sample(run, v0, T, opt.q, opt.r, opt.weighted, cs.label));
    }
  });

  std::vector<ConstantFitReport> out;
  for (std::size_t h = 0; h < opt.horizons.size(); ++h) {
    ConstantFitReport rep;
    rep.inequality = "maximal_regularity";
    rep.family = "eigen-sum forcings";
    rep.grid_h = std::min(grid->hx(), grid->hy());
    rep.horizon = opt.horizons[h];
    rep.weighted = opt.weighted;
    for (const auto& pc : per_case) rep.samples.push_back(pc[h]);
    finish_fit(rep);
    out.push_back(std::move(rep));
  }
  return out;
}

ConstantFitReport embedding_check(const std::vector<ScalarField>& fields, double alpha, double s,
                                  const std::vector<std::string>& labels) {
  if (fields.empty()) throw InvalidInput("embedding: empty battery");
  if (!labels.empty() && labels.size() != fields.size()) throw InvalidInput("embedding: label count mismatch");
  const int N = fields.front().grid().dimension();
  if (!(alpha > 1.0 && alpha < N)) throw InvalidInput("embedding: alpha must lie in (1, N)");
  if (!(s > 0.0)) throw InvalidInput("embedding: s must be > 0");
  const double target = N * alpha / (N - alpha);
  ConstantFitReport rep;
  rep.inequality = "embedding";
  rep.family = "neumann fields";
  rep.grid_h = std::min(fields.front().grid().hx(), fields.front().grid().hy());
  rep.samples.resize(fields.size());
  parallel_for(fields.size(), [&](std::size_t k) {
    const ScalarField& f = fields[k];
    FitSample& smp = rep.samples[k];
    smp.label = labels.empty() ? "field_" + std::to_string(k) : labels[k];
    smp.lhs = grad_lr_norm(f, target);
    smp.rhs = lp_norm(laplacian(f), alpha) + lp_norm(f, s);
    smp.ratio = ratio_of(smp.lhs, smp.rhs);
  });
  finish_fit(rep);
  return rep;
}

}  // namespace kslab
