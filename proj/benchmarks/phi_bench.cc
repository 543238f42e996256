#include <benchmark/benchmark.h>

#include <cmath>

#include "primecycles/analytic.h"

namespace {

// Argument is -log10(1 - z).
void BM_PhiEval(benchmark::State& state) {
  const double z = 1.0 - std::pow(10.0, -static_cast<double>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(primecycles::phi_eval(z));
  }
}
BENCHMARK(BM_PhiEval)->DenseRange(1, 6)->Unit(benchmark::kMillisecond);

void BM_PhiDeriv(benchmark::State& state) {
  const double z = 1.0 - 1e-4;
  const int order = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(primecycles::phi_deriv(z, order));
  }
}
BENCHMARK(BM_PhiDeriv)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

// Argument is -log10 t.
void BM_PhiSplit(benchmark::State& state) {
  const double t = std::pow(10.0, -static_cast<double>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(primecycles::phi_split(t));
  }
}
BENCHMARK(BM_PhiSplit)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);

void BM_Constants(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(primecycles::compute_constants());
  }
}
BENCHMARK(BM_Constants);

}  // namespace
