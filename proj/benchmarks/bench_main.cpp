#include <random>

#include <benchmark/benchmark.h>

#include "cadse/bd_metrics.hpp"
#include "cadse/catalog.hpp"
#include "cadse/engine.hpp"
#include "cadse/gop_schedule.hpp"
#include "cadse/pareto.hpp"
#include "cadse/surrogate.hpp"
#include "test_support.hpp"

using namespace cadse;

static void BM_BdDelta(benchmark::State& state) {
  std::mt19937_64 rng(3);
  const auto a = support::random_curve(rng, "a");
  const auto b = support::random_curve(rng, "b");
  for (auto _ : state) benchmark::DoNotOptimize(bd_delta(a, b, BdAxis::rate));
}
BENCHMARK(BM_BdDelta);

static void BM_ParetoFront(benchmark::State& state) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-60.0, 40.0);
  std::vector<KeyedPoint> points;
  for (int k = 0; k < state.range(0); ++k) points.push_back({std::to_string(k), {u(rng), u(rng)}});
  for (auto _ : state) benchmark::DoNotOptimize(pareto_front(points));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ParetoFront)->Range(64, 1 << 14)->Complexity();

static void BM_BuildSchedule(benchmark::State& state) {
  const auto catalog = load_catalog_file(default_catalog_path());
  std::vector<int> m(catalog.size());
  for (std::size_t t = 0; t < m.size(); ++t) m[t] = static_cast<int>(t % 9);
  for (std::size_t t = 0; t < m.size(); ++t) {
    if (!catalog.tool(t).granular) m[t] = 8;
  }
  const ToolRateVector ctp(m);
  for (auto _ : state) benchmark::DoNotOptimize(build_schedule(ctp, catalog));
}
BENCHMARK(BM_BuildSchedule);

static void BM_SurrogateCampaign(benchmark::State& state) {
  const auto catalog = load_catalog_file(default_catalog_path());
  const auto mode = state.range(0) == 0 ? SearchMode::adse : SearchMode::cadse;
  for (auto _ : state) {
    SurrogateSource source(generate_surrogate(catalog.size(), SurrogateOptions{}, 1));
    Evaluator evaluator(source, source.model().anchor_curves);
    CampaignOptions options;
    options.mode = mode;
    benchmark::DoNotOptimize(run(catalog.baseline(), catalog, evaluator, options));
  }
}
BENCHMARK(BM_SurrogateCampaign)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
