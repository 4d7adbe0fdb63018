// Serial reference against the OpenMP kernels on the same random corpora.

#include <benchmark/benchmark.h>

#include "atdp/generators.hpp"
#include "atdp/solver.hpp"

namespace {

atdp::Instance corpus_instance(std::size_t inputs, std::size_t functions, std::uint64_t seed) {
  return atdp::Instance(atdp::random_scenario({seed, inputs, 3, functions, functions / 3, 0.3}));
}

std::vector<atdp::Instance> corpus(std::size_t n, std::size_t inputs, std::size_t functions) {
  std::vector<atdp::Instance> out;
  for (std::size_t s = 0; s < n; ++s) out.push_back(corpus_instance(inputs, functions, 1000 + s));
  return out;
}

atdp::SolveConfig config(bool memoize) {
  atdp::SolveConfig cfg;
  cfg.memoize = memoize;
  return cfg;
}

void BM_DecideSerial(benchmark::State& state) {
  const auto s = corpus_instance(static_cast<std::size_t>(state.range(0)), 40, 7);
  const auto cfg = config(state.range(1) != 0);
  for (auto _ : state) benchmark::DoNotOptimize(atdp::decide(s, s.num_inputs(), cfg));
}

void BM_DecideParallel(benchmark::State& state) {
  const auto s = corpus_instance(static_cast<std::size_t>(state.range(0)), 40, 7);
  const auto cfg = config(state.range(1) != 0);
  for (auto _ : state) benchmark::DoNotOptimize(atdp::decide_parallel(s, s.num_inputs(), cfg));
}

void BM_BatchSerial(benchmark::State& state) {
  const auto instances = corpus(64, 6, 24);
  for (auto _ : state)
    for (const auto& s : instances) benchmark::DoNotOptimize(atdp::decide(s, 3));
}

void BM_BatchParallel(benchmark::State& state) {
  const auto instances = corpus(64, 6, 24);
  const std::vector<std::uint64_t> ks(instances.size(), 3);
  for (auto _ : state) benchmark::DoNotOptimize(atdp::decide_batch(instances, ks));
}

}  // namespace

BENCHMARK(BM_DecideSerial)->ArgsProduct({{6, 8}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DecideParallel)->ArgsProduct({{6, 8}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BatchSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BatchParallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
