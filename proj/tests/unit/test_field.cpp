#include <cmath>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "kslab/error.hpp"
#include "kslab/field.hpp"
#include "kslab/random.hpp"
#include "kslab/snapshot.hpp"

using namespace kslab;
using std::numbers::pi;

namespace {

GridPtr square(int n) { return make_grid(Grid::rectangle(1.0, 1.0, n, n)); }

double sinsin_error(int n) {
  const auto f = ScalarField::sample(square(n), [](double x, double y) { return std::sin(pi * x) * std::sin(pi * y); });
  return std::abs(lp_norm(f, 2.0) - 0.5);
}

double exp_error(int n) {
  // int int e^{2x} y^4 = (e^2 - 1) / 10
  const auto f = ScalarField::sample(square(n), [](double x, double y) { return std::exp(x) * y * y; });
  return std::abs(lp_norm(f, 2.0) - std::sqrt((std::exp(2.0) - 1.0) / 10.0));
}

double sin_grad_error(int n) {
  const auto f = ScalarField::sample(square(n), [](double x, double) { return std::sin(pi * x); });
  return std::abs(grad_lr_norm(f, 2.0) - pi / std::sqrt(2.0));
}

}  // namespace

TEST_CASE("grid measures match the domain") {
  const auto r = Grid::rectangle(2.0, 0.5, 37, 11);
  CHECK(std::abs(r.measure() - 1.0) <= 1e-12);
  for (int N : {1, 2, 3, 4}) {
    const auto g = Grid::radial(1.3, 57, N);
    CHECK(std::abs(g.measure() - g.exact_measure()) <= 1e-12 * g.exact_measure());
  }
  CHECK(Grid::radial(1.0, 10, 2).exact_measure() == doctest::Approx(pi).epsilon(1e-15));
  CHECK_THROWS_AS(Grid::rectangle(1.0, 1.0, 3, 8), InvalidInput);
  CHECK_THROWS_AS(Grid::radial(1.0, 3, 2), InvalidInput);
}

TEST_CASE("lp_norm examples") {
  const auto g = square(16);
  CHECK(lp_norm(ScalarField(g, 2.0), 2.0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(lp_norm(ScalarField(g, 0.0), 3.0) == 0.0);
  CHECK(lp_norm(ScalarField(g, -3.0), std::numeric_limits<double>::infinity()) == 3.0);
  CHECK_THROWS_AS(lp_norm(ScalarField(g, 1.0), 0.0), InvalidInput);
  CHECK_THROWS_AS(lp_norm(ScalarField(g, 1.0), -1.0), InvalidInput);
}

TEST_CASE("midpoint quadrature converges at second order") {
  CHECK(sinsin_error(32) < 1e-3);
  const double e1 = exp_error(32), e2 = exp_error(64);
  CHECK(e1 > 0.0);
  CHECK(e1 / e2 >= 3.5);
}

TEST_CASE("grad_lr_norm examples") {
  const auto g = square(32);
  const auto x = ScalarField::sample(g, [](double x, double) { return x; });
  CHECK(grad_lr_norm(x, 2.0) == doctest::Approx(1.0).epsilon(1.0 / 32));
  CHECK(grad_lr_norm(ScalarField(g, 4.2), 1.0) == 0.0);
  CHECK(grad_lr_norm(ScalarField(g, 4.2), 3.0) == 0.0);
  CHECK_THROWS_AS(grad_lr_norm(x, 0.5), InvalidInput);
  const double e1 = sin_grad_error(64), e2 = sin_grad_error(128);
  CHECK(e1 < 1e-2);
  CHECK(e1 / e2 >= 3.0);
}

TEST_CASE("integrate_over_mask") {
  const auto g = square(10);
  const ScalarField one(g, 1.0);
  std::vector<std::size_t> quarter;
  for (int j = 0; j < 5; ++j)
    for (int i = 0; i < 5; ++i) quarter.push_back(g->index(i, j));
  CHECK(integrate_over_mask(one, quarter, 3.0) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(integrate_over_mask(one, {}, 2.0) == 0.0);

  ScalarField two = one;
  two.at(3, 4) = 10.0;  // one cell of area 0.01
  const std::vector<std::size_t> patch = {g->index(3, 4)};
  CHECK(integrate_over_mask(two, patch, 1.0) == doctest::Approx(0.1).epsilon(1e-14));

  const std::vector<std::size_t> dup = {1, 1};
  CHECK_THROWS_AS(integrate_over_mask(one, dup, 1.0), InvalidInput);
  const std::vector<std::size_t> out = {1000};
  CHECK_THROWS_AS(integrate_over_mask(one, out, 1.0), InvalidInput);
}

TEST_CASE("Hoelder consistency on random fields") {
  Rng rng(7);
  const auto g = make_grid(Grid::rectangle(2.0, 1.5, 12, 9));
  for (int trial = 0; trial < 50; ++trial) {
    ScalarField f(g);
    for (std::size_t c = 0; c < f.size(); ++c) f[c] = rng.uniform(-3.0, 3.0);
    const double p = rng.uniform(0.5, 3.0), q = p + rng.uniform(0.1, 4.0);
    const double lhs = lp_norm(f, p);
    const double rhs = std::pow(g->measure(), 1.0 / p - 1.0 / q) * lp_norm(f, q);
    CHECK(lhs <= rhs * (1.0 + 1e-10));
  }
}

TEST_CASE("radial norms use the N-dimensional volume") {
  const auto g = make_grid(Grid::radial(1.0, 40, 2));
  CHECK(lp_norm(ScalarField(g, 3.0), 2.0) == doctest::Approx(3.0 * std::sqrt(pi)).epsilon(1e-13));
  const auto g3 = make_grid(Grid::radial(2.0, 40, 3));
  CHECK(integrate(ScalarField(g3, 1.0)) == doctest::Approx(4.0 / 3.0 * pi * 8.0).epsilon(1e-13));
}

TEST_CASE("laplacian and hessian") {
  const auto g = square(64);
  CHECK(max_norm(laplacian(ScalarField(g, 5.0))) == 0.0);
  CHECK(max_norm(hessian_magnitude(ScalarField(g, 5.0))) == 0.0);
  const auto c = ScalarField::sample(g, [](double x, double) { return std::cos(pi * x); });
  const auto lap = laplacian(c);
  double err = 0.0;
  for (int j = 0; j < 64; ++j)
    for (int i = 0; i < 64; ++i) err = std::max(err, std::abs(lap.at(i, j) + pi * pi * c.at(i, j)));
  CHECK(err < 0.01);
  // Radial Laplacian of rho^2 in N dimensions is 2N (interior cells).
  for (int N : {2, 3}) {
    const auto r = make_grid(Grid::radial(1.0, 64, N));
    const auto f = ScalarField::sample(r, [](double rho, double) { return rho * rho; });
    const auto l = laplacian(f);
    CHECK(l[10] == doctest::Approx(2.0 * N).epsilon(1e-9));
  }
}

TEST_CASE("finite and sign checks") {
  const auto g = square(4);
  ScalarField f(g, 1.0);
  f[3] = std::nan("");
  CHECK_THROWS_AS(f.check_finite(), NumericalFault);
  ScalarField n(g, 1.0);
  n[2] = -1e-300;
  CHECK_THROWS_AS(n.require_nonnegative(), InvalidInput);
  CHECK_THROWS_AS(ScalarField(g, std::vector<double>(3, 0.0)), InvalidInput);
}

TEST_CASE("snapshot round trip is bit exact") {
  Rng rng(3);
  for (const auto& g : {make_grid(Grid::rectangle(1.7, 0.3, 9, 5, -0.2, 0.4)), make_grid(Grid::radial(1.1, 13, 3))}) {
    ScalarField f(g);
    for (std::size_t c = 0; c < f.size(); ++c) f[c] = rng.uniform(-1.0, 1.0);
    std::stringstream ss;
    write_snapshot(ss, f);
    CHECK(ss.str().size() == 56 + 8 * f.size());
    CHECK(ss.str().substr(0, 4) == "KSF1");
    const auto back = read_snapshot(ss);
    CHECK(back.grid().same_layout(*g));
    for (std::size_t c = 0; c < f.size(); ++c) CHECK(back[c] == f[c]);
  }
  std::stringstream bad("KSF2garbage");
  CHECK_THROWS_AS(read_snapshot(bad), IoFailure);
  std::stringstream csv;
  write_csv(csv, ScalarField(square(4), 1.0));
  std::string header;
  std::getline(csv, header);
  CHECK(header == "x,y,value");
}
