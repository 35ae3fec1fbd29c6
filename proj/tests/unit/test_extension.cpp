#include <cmath>
#include <vector>

#include "doctest.h"
#include "kslab/error.hpp"
#include "kslab/extension.hpp"
#include "kslab/random.hpp"

using namespace kslab;

namespace {

GridPtr square(int n) { return make_grid(Grid::rectangle(1.0, 1.0, n, n)); }

// Sum of a few tilted plane waves with random phases; none satisfies a
// Neumann condition, so the reflection has real work to do.
struct Wave {
  double kx, ky, phase, amp;
};

std::vector<std::vector<Wave>> battery(int count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::vector<Wave>> out(count);
  for (auto& waves : out) {
    const int n = static_cast<int>(rng.integer(1, 3));
    for (int k = 0; k < n; ++k) {
      waves.push_back({rng.uniform(-6.0, 6.0), rng.uniform(-6.0, 6.0), rng.uniform(0.0, 6.28), rng.uniform(0.2, 1.5)});
    }
  }
  return out;
}

ScalarField sample_waves(GridPtr g, const std::vector<Wave>& waves) {
  return ScalarField::sample(std::move(g), [&](double x, double y) {
    double s = 0.0;
    for (const auto& w : waves) s += w.amp * std::cos(w.kx * x + w.ky * y + w.phase);
    return s;
  });
}

}  // namespace

TEST_CASE("cutoff ramp shape") {
  const double m = 0.25, h = 1.0 / 32;
  CHECK(cutoff_ramp(0.0, m, h) == 1.0);
  CHECK(cutoff_ramp(m / 2, m, h) == 1.0);
  CHECK(cutoff_ramp(m - h / 2, m, h) == 0.0);
  CHECK(cutoff_ramp(m, m, h) == 0.0);
  double prev = 1.0;
  for (double d = m / 2; d <= m; d += h / 8) {
    const double z = cutoff_ramp(d, m, h);
    CHECK(z <= prev);
    prev = z;
  }
}

TEST_CASE("affine profiles continue exactly") {
  const auto g = square(32);
  const auto f = ScalarField::sample(g, [](double x, double y) { return 0.7 - 1.3 * x + 2.1 * y; });
  const auto e = extend_first_order(f, 0.25);
  const Grid& eg = e.raw.grid();
  CHECK(eg.nx() == 48);
  CHECK(eg.x0() == doctest::Approx(-0.25));
  double worst = 0.0;
  for (int j = 0; j < eg.ny(); ++j) {
    for (int i = 0; i < eg.nx(); ++i) {
      const double exact = 0.7 - 1.3 * eg.center_x(i) + 2.1 * eg.center_y(j);
      worst = std::max(worst, std::abs(e.raw.at(i, j) - exact));
      const auto prov = e.provenance[eg.index(i, j)];
      if (prov == Provenance::interior || prov == Provenance::reflected) REQUIRE(e.values.at(i, j) == e.raw.at(i, j));
    }
  }
  CHECK(worst < 1e-13);

  const auto one = extend_first_order(ScalarField(g, 1.0), 0.25);
  double dev = 0.0;
  for (double v : one.raw.values()) dev = std::max(dev, std::abs(v - 1.0));
  CHECK(dev < 1e-14);
}

TEST_CASE("quadratic profile shows the first-order reflection") {
  const int n = 64;
  const auto g = square(n);
  const auto f = ScalarField::sample(g, [](double, double y) { return y * y; });
  const auto e = extend_first_order(f, 0.25);
  const double h = 1.0 / n;
  // below the bottom edge: -3t^2 + 4(t/2)^2 = -2t^2, up to the linear
  // interpolation error of the half-shift sample: at most h^2, and 1.25 h^2
  // for the first cell where t/2 lies below the first center
  for (int m = 0; m < e.pad_y / 2; ++m) {
    const double t = (m + 0.5) * h;
    const double tol = (m == 0 ? 1.25 : 1.0) * h * h * (1.0 + 1e-9);
    CHECK(std::abs(e.raw.at(e.pad_x + 10, e.pad_y - 1 - m) + 2.0 * t * t) <= tol);
  }
}

TEST_CASE("provenance, support and restriction") {
  const auto g = square(40);
  const auto f = sample_waves(g, battery(1, 3)[0]);
  const auto e = extend_first_order(f, 0.25);
  const Grid& eg = e.values.grid();
  const auto r = e.restrict_to_source();
  CHECK(r.grid().same_layout(*g));
  bool same = true;
  for (std::size_t c = 0; c < f.size(); ++c) same = same && r[c] == f[c];
  CHECK(same);
  // outer layer vanishes
  for (int i = 0; i < eg.nx(); ++i) {
    CHECK(e.values.at(i, 0) == 0.0);
    CHECK(e.values.at(i, eg.ny() - 1) == 0.0);
  }
  int counts[4] = {0, 0, 0, 0};
  for (auto p : e.provenance) ++counts[static_cast<int>(p)];
  CHECK(counts[0] == 1600);
  CHECK(counts[1] > 0);
  CHECK(counts[2] > 0);
  CHECK(counts[3] > 0);
}

TEST_CASE("margin checks") {
  const auto g = square(32);
  const ScalarField f(g, 1.0);
  CHECK_THROWS_AS(extend_first_order(f, 0.0), InvalidInput);
  CHECK_THROWS_AS(extend_first_order(f, 0.6), InvalidInput);
  CHECK_THROWS_AS(extend_first_order(f, 0.05), InvalidInput);  // under 4 cells
  CHECK_NOTHROW(extend_first_order(f, 0.5));
  CHECK_THROWS_AS(extend_first_order(ScalarField(make_grid(Grid::radial(1.0, 32, 2)), 1.0), 0.25), InvalidInput);
}

TEST_CASE("report on constant and zero fields") {
  const auto g = square(32);
  const ScalarField one(g, 1.0);
  const auto rep = extension_report(one, extend_first_order(one, 0.25), 1.0, 2.0, 2.0);
  CHECK(rep.lq_ratio > 1.0);
  CHECK(rep.lq_ratio <= std::sqrt(1.5 * 1.5) + 1e-12);
  CHECK(rep.propagation_holds);
  CHECK(rep.propagation_bound == doctest::Approx(15.0));

  const ScalarField zero(g, 0.0);
  const auto z = extension_report(zero, extend_first_order(zero, 0.25), 2.0, 2.0, 2.0);
  CHECK(z.lq_ratio == 1.0);
  CHECK(z.w1r_ratio == 1.0);
  for (double m : z.source_curve.mass) CHECK(m == 0.0);
  for (double m : z.extended_curve.mass) CHECK(m == 0.0);
}

TEST_CASE("interface jumps converge at orders two and one") {
  const auto waves = battery(1, 5)[0];
  std::vector<InterfaceJumps> jumps;
  for (int n : {64, 128, 256}) jumps.push_back(interface_jumps(extend_first_order(sample_waves(square(n), waves), 0.25)));
  for (std::size_t k = 1; k < jumps.size(); ++k) {
    CHECK(std::log2(jumps[k - 1].value / jumps[k].value) > 1.9);
    CHECK(std::log2(jumps[k - 1].normal / jumps[k].normal) > 0.9);
  }
}

TEST_CASE("smooth battery: propagation and stable W1r ratio") {
  const auto fields = battery(50, 2024);
  double worst[2] = {0.0, 0.0};
  int k = 0;
  for (int n : {32, 64}) {
    for (const auto& w : fields) {
      const auto f = sample_waves(square(n), w);
      const auto rep = extension_report(f, extend_first_order(f, 0.25), 2.0, 2.0, 2.0, 12);
      CHECK(rep.propagation_holds);
      CHECK(rep.observed_factor <= rep.propagation_bound);
      worst[k] = std::max(worst[k], rep.w1r_ratio);
    }
    ++k;
  }
  CHECK(std::isfinite(worst[0]));
  CHECK(std::abs(worst[1] / worst[0] - 1.0) < 0.10);
}
