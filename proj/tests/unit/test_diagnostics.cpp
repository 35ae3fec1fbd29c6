#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "kslab/diagnostics.hpp"
#include "kslab/error.hpp"
#include "kslab/random.hpp"

using namespace kslab;
using std::numbers::pi;

namespace {

GridPtr square(int n) { return make_grid(Grid::rectangle(1.0, 1.0, n, n)); }

bool nondecreasing(const std::vector<double>& v) {
  for (std::size_t k = 1; k < v.size(); ++k)
    if (v[k] < v[k - 1]) return false;
  return true;
}

// Series and concentration records with prescribed sup norms and final
// ladder values; enough for the classifier.
RunReport synthetic(const std::vector<double>& u_inf, const std::vector<double>& c_last, HaltReason halt) {
  RunReport r;
  r.final_state.halt = halt;
  r.concentration.radii = {0.1, 0.2, 0.4};
  r.concentration.sup_over_time.assign(3, 0.0);
  for (std::size_t k = 0; k < u_inf.size(); ++k) {
    SeriesRow row;
    row.t = 0.1 * k;
    row.u_inf = u_inf[k];
    r.series.push_back(row);
    const std::vector<double> c = k + 1 == u_inf.size() ? c_last : std::vector<double>{0.1, 0.3, 1.0};
    r.concentration.times.push_back(row.t);
    r.concentration.values.push_back(c);
    r.concentration.centers.push_back({{0.5, 0.5}, {0.5, 0.5}, {0.5, 0.5}});
    for (std::size_t j = 0; j < 3; ++j) r.concentration.sup_over_time[j] = std::max(r.concentration.sup_over_time[j], c[j]);
  }
  return r;
}

}  // namespace

TEST_CASE("concentration of a constant density") {
  const auto g = square(64);
  const double c = 2.5, h = 1.0 / 64;
  const std::vector<double> radii = {4 * h, 8 * h, 0.2};
  const auto res = concentration_at(ScalarField(g, c), radii);
  for (std::size_t k = 0; k < radii.size(); ++k) {
    const double rho = radii[k];
    CHECK(std::abs(res.values[k] - c * pi * rho * rho) <= c * 2.0 * pi * rho * h);
  }
  const auto rg = make_grid(Grid::radial(1.0, 64, 2));
  const auto rr = concentration_at(ScalarField(rg, c), radii);
  for (std::size_t k = 0; k < radii.size(); ++k) {
    const double rho = radii[k];
    CHECK(std::abs(rr.values[k] - c * pi * rho * rho) <= c * 2.0 * pi * rho * h);
  }
}

TEST_CASE("narrow Gaussian holds its mass") {
  const auto g = square(128);
  const double m = 3.0, s = 0.02;
  const auto u = ScalarField::sample(g, [&](double x, double y) {
    const double r2 = (x - 0.43) * (x - 0.43) + (y - 0.61) * (y - 0.61);
    return m / (2 * pi * s * s) * std::exp(-r2 / (2 * s * s));
  });
  const std::vector<double> radii = {0.1, 0.2};
  const auto res = concentration_at(u, radii);
  for (double v : res.values) CHECK(std::abs(v / m - 1.0) < 0.02);
  CHECK(res.centers[0].first == doctest::Approx(0.43).epsilon(0.02));
  CHECK(res.centers[0].second == doctest::Approx(0.61).epsilon(0.02));
}

TEST_CASE("diameter ball covers the domain") {
  Rng rng(17);
  for (auto g : {square(24), make_grid(Grid::radial(1.0, 30, 2)), make_grid(Grid::radial(1.0, 30, 3))}) {
    ScalarField u(g);
    for (std::size_t c = 0; c < u.size(); ++c) u[c] = rng.uniform(0.0, 3.0);
    const std::vector<double> radii = {g->diameter()};
    const double full = integrate_pow(u, 0.5 * g->dimension());
    CHECK(concentration_at(u, radii).values[0] == doctest::Approx(full).epsilon(1e-12));
  }
}

TEST_CASE("concentration is nondecreasing in the radius") {
  Rng rng(5);
  for (auto g : {square(32), make_grid(Grid::radial(1.0, 40, 2)), make_grid(Grid::radial(1.0, 40, 5))}) {
    std::vector<double> radii;
    for (int k = 4; k < 60; ++k) radii.push_back(k * 0.5 * g->hx());
    for (int trial = 0; trial < 5; ++trial) {
      ScalarField u(g);
      for (std::size_t c = 0; c < u.size(); ++c) u[c] = std::pow(rng.uniform(), 4) * 10.0;
      CHECK(nondecreasing(concentration_at(u, radii).values));
    }
  }
  CHECK_THROWS_AS(concentration_at(ScalarField(square(32), 1.0), std::vector<double>{0.01}), InvalidInput);
  CHECK_THROWS_AS(concentration_at(ScalarField(square(32), 1.0), std::vector<double>{0.2, 0.1}), InvalidInput);
}

TEST_CASE("superlinear functionals") {
  const auto g = square(16);
  const double c = 3.0;
  const ScalarField u(g, c);
  CHECK(superlinear_functional(u, SuperlinearKind::u_log).value ==
        doctest::Approx(c * std::log(c + std::numbers::e)).epsilon(1e-13));
  CHECK(superlinear_functional(u, SuperlinearKind::u_loglog).value ==
        doctest::Approx(c * std::log(std::log(c + std::numbers::e))).epsilon(1e-13));
  const ScalarField zero(g, 0.0);
  CHECK(superlinear_functional(zero, SuperlinearKind::u_log).value == 0.0);
  CHECK(superlinear_functional(zero, SuperlinearKind::u_loglog).value == 0.0);

  SuperlinearTable sq{{0.0, 1.0, 2.0, 4.0}, {0.0, 1.0, 4.0, 16.0}};
  const auto r = superlinear_functional(u, SuperlinearKind::custom, sq);
  CHECK(r.value == doctest::Approx(10.0).epsilon(1e-13));  // linear between 2 and 4
  CHECK(r.growth_ratio == doctest::Approx(4.0));
  // past the last node the last segment continues
  CHECK(superlinear_functional(ScalarField(g, 5.0), SuperlinearKind::custom, sq).value == doctest::Approx(22.0));

  SuperlinearTable bad{{0.0, 1.0, 2.0}, {0.0, 2.0, 1.0}};
  CHECK_THROWS_AS(superlinear_functional(u, SuperlinearKind::custom, bad), InvalidInput);
  SuperlinearTable unsorted{{0.0, 2.0, 1.0}, {0.0, 1.0, 2.0}};
  CHECK_THROWS_AS(superlinear_functional(u, SuperlinearKind::custom, unsorted), InvalidInput);
  CHECK_THROWS_AS(superlinear_functional(u, SuperlinearKind::custom, SuperlinearTable{{1.0}, {1.0}}), InvalidInput);
}

TEST_CASE("classifier rule") {
  const std::vector<double> grow = {1.0, 3.0, 30.0};
  const std::vector<double> flat = {1.0, 1.1, 1.2};
  const std::vector<double> tight = {0.8, 0.9, 1.0};
  const std::vector<double> spread = {0.1, 0.5, 1.0};
  CHECK(classify_run(synthetic(grow, tight, HaltReason::value_cap)).classification == Classification::blowup_suspected);
  CHECK(classify_run(synthetic(grow, tight, HaltReason::dt_floor)).classification == Classification::blowup_suspected);
  CHECK(classify_run(synthetic(grow, tight, HaltReason::time_reached)).classification == Classification::bounded);
  CHECK(classify_run(synthetic(flat, tight, HaltReason::value_cap)).classification == Classification::bounded);
  CHECK(classify_run(synthetic(grow, spread, HaltReason::value_cap)).classification == Classification::bounded);
  CHECK(classify_run(synthetic(grow, tight, HaltReason::nan)).classification == Classification::withheld);
  CHECK(classify_run(synthetic(grow, tight, HaltReason::none)).classification == Classification::withheld);
  CHECK(classify_run(RunReport{}).classification == Classification::withheld);
  const auto v = classify_run(synthetic(grow, tight, HaltReason::value_cap));
  CHECK(v.growth_factor == doctest::Approx(30.0));
  CHECK(v.persistence == doctest::Approx(0.8));
  CHECK(to_string(v.classification) == "blowup_suspected");
}

TEST_CASE("verdict survives subsampling") {
  Rng rng(99);
  const HaltReason halts[] = {HaltReason::time_reached, HaltReason::value_cap, HaltReason::dt_floor};
  for (int trial = 0; trial < 300; ++trial) {
    const auto n = static_cast<std::size_t>(rng.integer(2, 12));
    std::vector<double> u(n);
    for (auto& x : u) x = rng.uniform(0.5, 40.0);
    const double a = rng.uniform(0.0, 1.0);
    const auto r = synthetic(u, {a, std::max(a, rng.uniform()), 1.0}, halts[rng.integer(0, 2)]);
    const auto full = classify_run(r);
    const auto half = classify_run(subsample(r));
    REQUIRE(full.classification == half.classification);
    REQUIRE(full.growth_factor == half.growth_factor);
  }
}

TEST_CASE("homogeneous run is bounded with a resolved profile") {
  SolverConfig c;
  c.geometry.nx = c.geometry.ny = 16;
  c.t_end = 0.5;
  c.monitor.every = 0.1;
  c.monitor.snapshot_every = 0.1;
  c.monitor.radii_cells = {2, 4, 8};
  const auto rep = simulate(c);
  const auto v = classify_run(rep);
  CHECK(v.classification == Classification::bounded);
  CHECK(v.growth_factor == doctest::Approx(1.0).epsilon(1e-12));
  const auto prof = critical_family_profile(rep);
  CHECK_FALSE(prof.any_unresolved());
  for (double d : prof.delta) CHECK(d > rep.min_cell_area);
  CHECK(rep.concentration.times.size() == rep.series.size());
  CHECK(rep.concentration.center_wander() >= 0.0);
}
