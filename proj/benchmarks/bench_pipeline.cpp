#include <benchmark/benchmark.h>

#include "volcusum/cusum.hpp"
#include "volcusum/dgp.hpp"
#include "volcusum/limit.hpp"
#include "volcusum/longrun.hpp"
#include "volcusum/qv.hpp"
#include "volcusum/report.hpp"
#include "volcusum/rng.hpp"

namespace {

using namespace volcusum;

ScenarioConfig scenario(std::size_t n, std::size_t k) {
  ScenarioConfig cfg;
  cfg.hypothesis = Hypothesis::H0;
  cfg.days = n;
  cfg.intervals = k;
  cfg.seed = 11;
  return cfg;
}

void BM_Statistics(benchmark::State& state) {
  const ReturnPanel returns = generate_panel(scenario(state.range(0), state.range(1)));
  for (auto _ : state) {
    const QVPanel qv = realized_qv(returns);
    const StdQVPanel f = standardized_qv(qv);
    benchmark::DoNotOptimize(shape_statistic(f));
    benchmark::DoNotOptimize(total_statistic(log_total_qv(qv)));
  }
}
BENCHMARK(BM_Statistics)->Args({250, 78})->Args({2891, 78})->Unit(benchmark::kMicrosecond);

void BM_Covariance(benchmark::State& state) {
  const StdQVPanel f =
      standardized_qv(realized_qv(generate_panel(scenario(state.range(0), state.range(1)))));
  for (auto _ : state) {
    const Matrix cov = fde_covariance(f);
    benchmark::DoNotOptimize(eigen_spectrum(cov));
  }
}
BENCHMARK(BM_Covariance)->Args({250, 26})->Args({250, 78})->Unit(benchmark::kMicrosecond);

void BM_LimitSample(benchmark::State& state) {
  const StdQVPanel f = standardized_qv(realized_qv(generate_panel(scenario(250, 78))));
  const EigenSpectrum spectrum = eigen_spectrum(fde_covariance(f));
  Philox rng(5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate_shape_limit(spectrum, state.range(0), 500, rng));
  }
}
BENCHMARK(BM_LimitSample)->Arg(500)->Unit(benchmark::kMillisecond);

void BM_LongRunVariance(benchmark::State& state) {
  const LogTotalQV lq = log_total_qv(realized_qv(generate_panel(scenario(state.range(0), 26))));
  for (auto _ : state) {
    benchmark::DoNotOptimize(longrun_variance({lq.values.data(), lq.num_days()}));
  }
}
BENCHMARK(BM_LongRunVariance)->Arg(250)->Arg(2891);

void BM_Analyze(benchmark::State& state) {
  const PricePanel prices = prices_from_returns(generate_panel(scenario(250, 78)));
  AnalysisConfig cfg;
  cfg.test.draws = 1000;
  for (auto _ : state) benchmark::DoNotOptimize(analyze(prices, cfg));
}
BENCHMARK(BM_Analyze)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
