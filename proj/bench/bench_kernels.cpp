// Serial reference kernels against their OpenMP versions, plus a whole
// row-space membership certificate for scale.
#include <benchmark/benchmark.h>

#include "polycert/kernels.hpp"
#include "polycert/provers.hpp"
#include "polycert/workloads.hpp"

namespace {

using namespace polycert;

const Modulus kP(kDefaultPrime);

PolyMat square(std::size_t n, int d, u64 seed) {
  std::mt19937_64 rng(seed);
  return random_polymat(kP, n, n, d, rng);
}

void BM_EvalSerial(benchmark::State& st) {
  const PolyMat a = square(static_cast<std::size_t>(st.range(0)), static_cast<int>(st.range(1)), 1);
  for (auto _ : st) benchmark::DoNotOptimize(kernels::eval_serial(a, 12345));
}

void BM_EvalParallel(benchmark::State& st) {
  const PolyMat a = square(static_cast<std::size_t>(st.range(0)), static_cast<int>(st.range(1)), 1);
  for (auto _ : st) benchmark::DoNotOptimize(kernels::eval_parallel(a, 12345));
}

void BM_MulSerial(benchmark::State& st) {
  const PolyMat a = square(static_cast<std::size_t>(st.range(0)), static_cast<int>(st.range(1)), 2);
  const PolyMat b = square(static_cast<std::size_t>(st.range(0)), static_cast<int>(st.range(1)), 3);
  for (auto _ : st) benchmark::DoNotOptimize(kernels::mul_serial(a, b));
}

void BM_MulParallel(benchmark::State& st) {
  const PolyMat a = square(static_cast<std::size_t>(st.range(0)), static_cast<int>(st.range(1)), 2);
  const PolyMat b = square(static_cast<std::size_t>(st.range(0)), static_cast<int>(st.range(1)), 3);
  for (auto _ : st) benchmark::DoNotOptimize(kernels::mul_parallel(a, b));
}

void BM_RowSpaceMembership(benchmark::State& st) {
  InstanceSpec spec;
  spec.kind = InstanceKind::PlantedMembership;
  spec.m = spec.n = static_cast<std::size_t>(st.range(0));
  spec.d = static_cast<int>(st.range(1));
  spec.seed = 9;
  const Instance inst = generate(kP, spec);
  for (auto _ : st) {
    ProverPtr prover = honest_prover(inst, Params{});
    benchmark::DoNotOptimize(run_protocol(inst, Params{}, *prover).verdict.accepted);
  }
}

void kernel_sizes(benchmark::internal::Benchmark* b) {
  for (const int n : {16, 32, 64}) {
    for (const int d : {4, 16}) b->Args({n, d});
  }
}

}  // namespace

BENCHMARK(BM_EvalSerial)->Apply(kernel_sizes);
BENCHMARK(BM_EvalParallel)->Apply(kernel_sizes);
BENCHMARK(BM_MulSerial)->Apply(kernel_sizes)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MulParallel)->Apply(kernel_sizes)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RowSpaceMembership)->Args({8, 4})->Args({16, 4})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
