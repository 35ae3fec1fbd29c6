#include <cmath>
#include <filesystem>
#include <numbers>

#include "doctest.h"
#include "kslab/equi.hpp"
#include "kslab/error.hpp"
#include "kslab/interpolation.hpp"
#include "kslab/random.hpp"

using namespace kslab;
using std::numbers::pi;

namespace {

GridPtr square(int n) { return make_grid(Grid::rectangle(1.0, 1.0, n, n)); }

// Max over subsets S with |S| <= delta of integrate_over_mask(S) plus one
// fractional cell outside S filling the remaining measure.
double brute_force(const ScalarField& f, double p, double delta) {
  const std::size_t n = f.size();
  const Grid& g = f.grid();
  double best = 0.0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    std::vector<std::size_t> cells;
    double area = 0.0;
    for (std::size_t c = 0; c < n; ++c) {
      if (mask & (1u << c)) {
        cells.push_back(c);
        area += g.area(c);
      }
    }
    if (area > delta) continue;
    const double base = integrate_over_mask(f, cells, p);
    best = std::max(best, base);
    for (std::size_t c = 0; c < n; ++c) {
      if (mask & (1u << c)) continue;
      const double extra = std::min(g.area(c), delta - area);
      best = std::max(best, base + std::pow(std::abs(f[c]), p) * extra);
    }
  }
  return best;
}

}  // namespace

TEST_CASE("bathtub examples") {
  const auto g = square(10);
  for (double p : {0.5, 1.0, 3.0}) {
    CHECK(bathtub_modulus(ScalarField(g, 1.7), p, 0.1) == doctest::Approx(std::pow(1.7, p) * 0.1).epsilon(1e-13));
  }
  ScalarField two(g, 1.0);
  two.at(6, 2) = 10.0;
  CHECK(bathtub_modulus(two, 1.0, 0.005) == doctest::Approx(0.05).epsilon(1e-13));
  CHECK(bathtub_modulus(two, 1.0, 0.02) == doctest::Approx(0.11).epsilon(1e-13));
  CHECK_THROWS_AS(bathtub_modulus(two, 1.0, 0.0), InvalidInput);
  CHECK_THROWS_AS(bathtub_modulus(two, 0.0, 0.1), InvalidInput);
}

TEST_CASE("bathtub equals exhaustive subset search on small grids") {
  Rng rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = rng.integer(4, 10);
    const int N = rng.integer(1, 3);
    const auto g = make_grid(Grid::radial(rng.uniform(0.5, 2.0), n, N));
    ScalarField f(g);
    for (std::size_t c = 0; c < f.size(); ++c) f[c] = rng.uniform(-2.0, 2.0);
    const double p = rng.uniform(0.5, 3.0);
    for (int k = 0; k < 5; ++k) {
      const double delta = rng.uniform(0.01, 1.0) * g->measure();
      const double m = bathtub_modulus(f, p, delta);
      const double b = brute_force(f, p, delta);
      CHECK(std::abs(m - b) <= 1e-13 * std::max(1.0, b));
    }
  }
}

TEST_CASE("scaling covariance, monotonicity, subadditivity") {
  Rng rng(5);
  const auto g = square(12);
  ScalarField f(g);
  for (std::size_t c = 0; c < f.size(); ++c) f[c] = rng.uniform(-1.0, 1.0);
  for (double d : {0.003, 0.05, 0.3, 0.9}) {
    CHECK(bathtub_modulus(f.scaled(2.0), 1.0, d) == 2.0 * bathtub_modulus(f, 1.0, d));
    CHECK(bathtub_modulus(f.scaled(-0.5), 2.0, d) == 0.25 * bathtub_modulus(f, 2.0, d));
    CHECK(bathtub_modulus(f.scaled(3.0), 1.5, d) ==
          doctest::Approx(std::pow(3.0, 1.5) * bathtub_modulus(f, 1.5, d)).epsilon(1e-14));
  }
  double last = 0.0;
  for (double d = 0.001; d < 1.0; d += 0.013) {
    const double m = bathtub_modulus(f, 1.0, d);
    CHECK(m >= last);
    last = m;
    const double d2 = 0.37 * d;
    CHECK(bathtub_modulus(f, 1.0, d + d2) <= (bathtub_modulus(f, 1.0, d) + bathtub_modulus(f, 1.0, d2)) * (1 + 1e-14));
  }
}

TEST_CASE("modulus curve shape") {
  const auto g = square(16);
  const auto lin = modulus_curve(ScalarField(g, 2.0), 1.0, 12);
  REQUIRE(lin.delta.size() == 12);
  for (std::size_t k = 0; k < lin.delta.size(); ++k) CHECK(lin.mass[k] == doctest::Approx(2.0 * lin.delta[k]).epsilon(1e-13));
  CHECK(lin.delta.front() == doctest::Approx(g->min_area()).epsilon(1e-14));
  CHECK(lin.delta.back() == g->measure());

  const auto f = sample_bump(g, Bump{0.3, 0.6, 0.3, 2.0});
  const auto c = modulus_curve(f, 1.5, 20);
  CHECK(c.mass.back() == doctest::Approx(std::pow(lp_norm(f, 1.5), 1.5)).epsilon(1e-12));
  for (std::size_t k = 1; k < c.delta.size(); ++k) CHECK(c.mass[k] >= c.mass[k - 1]);
  CHECK_THROWS_AS(modulus_curve(f, 1.0, 1), InvalidInput);
}

TEST_CASE("Gaussian curve matches the superlevel-set integral") {
  const double sigma = 0.08;
  const auto g = square(256);
  const auto f = ScalarField::sample(g, [&](double x, double y) {
    const double r2 = (x - 0.5) * (x - 0.5) + (y - 0.5) * (y - 0.5);
    return std::exp(-r2 / (2 * sigma * sigma));
  });
  const auto c = modulus_curve(f, 1.0, 24);
  for (std::size_t k = 0; k < c.delta.size(); ++k) {
    const double d = c.delta[k];
    if (d > pi * 0.45 * 0.45) break;  // superlevel disc must stay inside the square
    const double exact = 2 * pi * sigma * sigma * (1.0 - std::exp(-d / pi / (2 * sigma * sigma)));
    CHECK(c.mass[k] == doctest::Approx(exact).epsilon(0.02));
  }
}

TEST_CASE("family profiles") {
  const auto g = square(20);
  std::vector<ScalarField> consts;
  for (double c : {0.25, 0.5, 1.0}) consts.emplace_back(g, c);
  const auto prof = family_profile(consts, 1.0);
  REQUIRE(prof.eps_prime.size() == 6);
  for (std::size_t j = 0; j < prof.eps_prime.size(); ++j) {
    CHECK(prof.delta[j] == doctest::Approx(prof.eps_prime[j]).epsilon(1e-12));
    if (j) CHECK(prof.eps_prime[j] > prof.eps_prime[j - 1]);
  }
  CHECK_FALSE(prof.any_unresolved());
  CHECK(prof.delta_at(0.1) == doctest::Approx(0.1).epsilon(1e-12));

  const auto bump = sample_bump(g, Bump{0.5, 0.5, 0.3, 1.0});
  const std::vector<ScalarField> single = {bump};
  const auto sp = family_profile(single, 2.0);
  const BathtubTable t(bump, 2.0);
  for (std::size_t j = 0; j < sp.eps_prime.size(); ++j) CHECK(sp.delta[j] == t.inverse(sp.eps_prime[j]));

  CHECK_THROWS_AS(family_profile(std::vector<ScalarField>{}, 1.0), InvalidInput);
  const std::vector<double> bad = {1.5};
  CHECK_THROWS_AS(family_profile(consts, 1.0, bad), InvalidInput);
}

TEST_CASE("concentration shrinks the family profile") {
  const auto g = square(256);
  const Bump base{0.5, 0.5, 0.4, 1.0};
  std::vector<double> prev;
  for (double lmax : {1.0, 2.0, 4.0}) {
    std::vector<double> lambdas;
    for (double l = 1.0; l <= lmax; l *= 2.0) lambdas.push_back(l);
    const auto fam = concentration_family(g, base, lambdas, 2, 1.0);
    const std::vector<double> ladder = {0.01, 0.02, 0.05};
    const auto prof = family_profile(fam, 1.0, ladder);
    if (!prev.empty()) {
      for (std::size_t j = 0; j < ladder.size(); ++j) CHECK(prof.delta[j] < prev[j]);
    }
    prev = prof.delta;
  }
}

TEST_CASE("membership") {
  const auto g = square(24);
  const auto phi = sample_bump(g, Bump{0.4, 0.5, 0.25, 1.0});
  const std::vector<ScalarField> fam = {phi};
  const std::vector<double> ladder = {0.001, 0.002, 0.005};
  const auto prof = family_profile(fam, 1.0, ladder);
  CHECK(check_membership(phi, prof, 1.0));
  CHECK_FALSE(check_membership(phi.scaled(2.0), prof, 1.0));
  CHECK(check_membership(ScalarField(g, 0.0), prof, 1.0));
}

TEST_CASE("profile csv round trip") {
  const auto g = square(8);
  const std::vector<ScalarField> fam = {ScalarField(g, 0.7)};
  const auto prof = family_profile(fam, 1.0);
  const auto path = std::filesystem::temp_directory_path() / "kslab_profile_test.csv";
  write_profile_csv(path, prof);
  const auto back = read_profile_csv(path);
  CHECK(back.eps_prime == prof.eps_prime);
  CHECK(back.delta == prof.delta);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(read_profile_csv(path), IoFailure);
}
