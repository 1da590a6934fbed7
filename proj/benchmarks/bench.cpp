#include <benchmark/benchmark.h>

#include "mpsca/cases/energy.hpp"
#include "mpsca/cases/example1d.hpp"
#include "mpsca/verify.hpp"

using namespace mpsca;

namespace {

Vector random_factors(int K, Rng& rng) {
  Vector a(K);
  for (int k = 0; k < K; ++k) a[k] = rng.log_uniform(1e-2, 1e2);
  return a;
}

void BM_ClosedFormY(benchmark::State& state) {
  Rng rng(1);
  const Vector a = random_factors(static_cast<int>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(closed_form_y(a));
}
BENCHMARK(BM_ClosedFormY)->DenseRange(2, 10, 4);

void BM_RecurrenceY(benchmark::State& state) {
  Rng rng(1);
  const Vector a = random_factors(static_cast<int>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(recurrence_y(a));
}
BENCHMARK(BM_RecurrenceY)->DenseRange(2, 10, 4);

void BM_MeanBoundAM(benchmark::State& state) {
  Rng rng(2);
  const int K = static_cast<int>(state.range(0));
  const Vector a = random_factors(K, rng);
  std::vector<double> y(static_cast<std::size_t>(K) - 1);
  for (auto& v : y) v = rng.log_uniform(0.1, 10);
  const AuxBlock block(y);
  for (auto _ : state) benchmark::DoNotOptimize(mean_bound(a, block, MeanKind::AM).value);
}
BENCHMARK(BM_MeanBoundAM)->DenseRange(2, 8, 3);

void BM_Example1D(benchmark::State& state) {
  const auto ex = cases::build_example1d();
  for (auto _ : state) benchmark::DoNotOptimize(cases::run_example1d(ex, 5.5, SCAConfig{}).final_objective());
}
BENCHMARK(BM_Example1D)->Unit(benchmark::kMillisecond);

void BM_EnergySCA(benchmark::State& state) {
  const auto problem = cases::build_energy_problem(cases::make_energy_config(static_cast<int>(state.range(0)), 1));
  SCAConfig cfg;
  cfg.max_iterations = 2000;
  for (auto _ : state) benchmark::DoNotOptimize(cases::run_energy_sca(problem, cfg).final_objective());
}
BENCHMARK(BM_EnergySCA)->Arg(10)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_ProjectBoxHalfspace(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::vector<Interval> box(static_cast<std::size_t>(n), Interval{0.0, 1.0});
  const FeasibleRegion region(box, {LinearConstraint{Vector::Ones(n), 1.0}});
  Rng rng(3);
  Vector x(n);
  for (int i = 0; i < n; ++i) x[i] = rng.uniform(-0.5, 1.5);
  for (auto _ : state) benchmark::DoNotOptimize(project(x, region));
}
BENCHMARK(BM_ProjectBoxHalfspace)->Arg(8)->Arg(80);

}  // namespace

BENCHMARK_MAIN();
