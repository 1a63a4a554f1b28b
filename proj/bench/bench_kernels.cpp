// Serial reference versus OpenMP kernels.

#include <benchmark/benchmark.h>

#include "solvcert/boundary.hpp"
#include "solvcert/kernels.hpp"

using namespace solvcert;

namespace {

Network chain(int n) {
  std::vector<Line> lines;
  for (int k = 1; k <= n; ++k) lines.push_back({k - 1, k, {1.0, 0.3 * k}});
  return Network(n, std::move(lines));
}

kernels::Exec mode(const benchmark::State& state) {
  return state.range(1) ? kernels::Exec::Parallel : kernels::Exec::Serial;
}

void BM_RandomCloud(benchmark::State& state) {
  const kernels::CompiledNetwork net(chain(static_cast<int>(state.range(0))));
  for (auto _ : state)
    benchmark::DoNotOptimize(kernels::random_cloud(net, 200000, {}, 1, mode(state)));
  state.SetItemsProcessed(state.iterations() * 200000);
}

void BM_LevelSetCloud(benchmark::State& state) {
  const Network n = chain(static_cast<int>(state.range(0)));
  const kernels::CompiledNetwork net(n);
  const CertificateMatrices form = build_certificates(n, cplus_direction(n.n()));
  for (auto _ : state)
    benchmark::DoNotOptimize(kernels::level_set_cloud(net, form, 0.5, 100000, {}, 1, mode(state)));
  state.SetItemsProcessed(state.iterations() * 100000);
}

void BM_Probe(benchmark::State& state) {
  const Network n = chain(static_cast<int>(state.range(0)));
  ProbeOptions opts;
  opts.samples = 200;
  opts.exec = mode(state);
  for (auto _ : state) benchmark::DoNotOptimize(probe_sufficient_condition(n, opts));
}

}  // namespace

BENCHMARK(BM_RandomCloud)->ArgsProduct({{2, 8}, {0, 1}})->ArgNames({"n", "parallel"})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LevelSetCloud)->ArgsProduct({{2}, {0, 1}})->ArgNames({"n", "parallel"})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Probe)->ArgsProduct({{2, 5}, {0, 1}})->ArgNames({"n", "parallel"})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
