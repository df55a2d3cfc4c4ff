#include <benchmark/benchmark.h>

#include "twotier/distortion.hpp"
#include "twotier/httl.hpp"
#include "twotier/oracle.hpp"
#include "twotier/presets.hpp"
#include "twotier/voronoi.hpp"

using namespace twotier;

namespace {

void BM_Evaluate(benchmark::State& state) {
  const Scenario s = load_preset("wsn2").scenario;
  const Quadrature q = build_quadrature(
      s, Integrator{IntegratorMode::MidpointGrid, static_cast<int>(state.range(0))});
  const Deployment d = random_deployment(s, 1);
  for (auto _ : state) benchmark::DoNotOptimize(evaluate(q, s, d));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(q.size()));
}
BENCHMARK(BM_Evaluate)->Arg(128)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_Envelope(benchmark::State& state) {
  const Scenario s = make_strip_scenario({1.0, 2.0, 4.0}, {1, 2, 2, 1, 1, 1}, 2, 1.0);
  const Quadrature q = build_quadrature(s, Integrator{IntegratorMode::MidpointGrid, 200});
  const Deployment d{{{0.2, 5e-4}, {0.5, 5e-4}, {0.8, 5e-4}}, {{0.3, 5e-4}, {0.7, 5e-4}}, {0, 1, 0}};
  const GeneralizedVoronoi gv(s, d);
  const std::vector<double> k{gv.additive(0), gv.additive(1), gv.additive(2)};
  for (auto _ : state) benchmark::DoNotOptimize(envelope_distortion(q, s.a_weights(), d.p, k));
}
BENCHMARK(BM_Envelope);

void BM_HttlRun(benchmark::State& state) {
  const Scenario s = load_preset(state.range(0) == 1 ? "wsn1" : "wsn2").scenario;
  const Quadrature q = build_quadrature(s, Integrator{IntegratorMode::MidpointGrid, 256});
  for (auto _ : state) benchmark::DoNotOptimize(httl_run(s, HttlConfig{1e-5, 100, 3}, q));
}
BENCHMARK(BM_HttlRun)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_BruteForceStrip(benchmark::State& state) {
  const Scenario s = make_strip_scenario({1.0, 100.0}, {1.0, 100.0}, 1, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_1d(s, 0.01));
}
BENCHMARK(BM_BruteForceStrip)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
