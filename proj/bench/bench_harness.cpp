#include <benchmark/benchmark.h>

#include "elab/harness.hpp"

namespace {

void BM_VerifyFourier(benchmark::State& state, elab::harness::Execution exec) {
  elab::harness::SweepOptions opts;
  opts.execution = exec;
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto rep = elab::harness::verify_family(elab::harness::Family::fourier, n, 1, opts);
    benchmark::DoNotOptimize(rep.min_EEA);
  }
  state.SetItemsProcessed(state.iterations() * n);
}

}  // namespace

BENCHMARK_CAPTURE(BM_VerifyFourier, serial, elab::harness::Execution::serial)
    ->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_VerifyFourier, parallel, elab::harness::Execution::parallel)
    ->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
