#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "kslab/kslab.hpp"

using namespace kslab;

namespace {

GridPtr square(int n) { return make_grid(Grid::rectangle(1.0, 1.0, n, n)); }

ScalarField waves(GridPtr g) {
  return ScalarField::sample(std::move(g), [](double x, double y) {
    return 1.5 + std::cos(3.0 * x + 1.0) * std::cos(5.0 * y) + 0.3 * std::sin(7.0 * x * y);
  });
}

}  // namespace

static void BM_BathtubTable(benchmark::State& state) {
  const auto f = waves(square(static_cast<int>(state.range(0))));
  for (auto _ : state) {
    BathtubTable t(f, 1.5);
    benchmark::DoNotOptimize(t.modulus(0.01));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(f.size()));
}
BENCHMARK(BM_BathtubTable)->Arg(64)->Arg(256)->Arg(512);

static void BM_GnRatio(benchmark::State& state) {
  const auto f = sample_bump(square(static_cast<int>(state.range(0))), Bump{0.5, 0.5, 0.3, 1.0});
  for (auto _ : state) benchmark::DoNotOptimize(gn_ratio(f, 2, 1.0, 2.0, 2.0).ratio);
}
BENCHMARK(BM_GnRatio)->Arg(256)->Arg(512);

static void BM_StepSquare(benchmark::State& state) {
  const auto g = square(static_cast<int>(state.range(0)));
  KellerSegelStepper stepper(g, DtPolicy{}, 1e12);
  SimState s;
  s.u = waves(g);
  s.v = ScalarField(g, 1.0);
  for (auto _ : state) {
    stepper.step_in_place(s);
    benchmark::DoNotOptimize(s.t);
  }
}
BENCHMARK(BM_StepSquare)->Arg(64)->Arg(128);

static void BM_StepRadial(benchmark::State& state) {
  const auto g = make_grid(Grid::radial(1.0, static_cast<int>(state.range(0)), 2));
  KellerSegelStepper stepper(g, DtPolicy{}, 1e12);
  SimState s;
  s.u = ScalarField::sample(g, [](double r, double) { return 2.0 + std::cos(3.0 * r); });
  s.v = ScalarField(g, 1.0);
  for (auto _ : state) {
    stepper.step_in_place(s);
    benchmark::DoNotOptimize(s.t);
  }
}
BENCHMARK(BM_StepRadial)->Arg(100)->Arg(200);

static void BM_Concentration(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto f = waves(square(n));
  const double h = 1.0 / n;
  const std::vector<double> radii = {4 * h, 8 * h, 16 * h, 32 * h};
  for (auto _ : state) benchmark::DoNotOptimize(concentration_at(f, radii).values.back());
}
BENCHMARK(BM_Concentration)->Arg(64)->Arg(128);

static void BM_Extension(benchmark::State& state) {
  const auto f = waves(square(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(extend_first_order(f, 0.25).values.size());
}
BENCHMARK(BM_Extension)->Arg(128)->Arg(512);
BENCHMARK_MAIN();
