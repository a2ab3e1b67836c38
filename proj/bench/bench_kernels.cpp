#include <benchmark/benchmark.h>

#include "witloop/decomposition.hpp"
#include "witloop/loophole.hpp"
#include "witloop/random.hpp"

using namespace witloop;

namespace
{

HermitianOperator qubit_operator(int qubits)
{
  Rng rng(42);
  return random_hermitian(std::vector<int>(qubits, 2), rng);
}

void BM_DecomposeSerial(benchmark::State& state)
{
  const auto w = qubit_operator(static_cast<int>(state.range(0)));
  const auto bases = bases_for(w.dims(), BasisKind::pauli);
  for (auto _ : state)
    benchmark::DoNotOptimize(decompose_serial(w, bases));
}

void BM_DecomposeParallel(benchmark::State& state)
{
  const auto w = qubit_operator(static_cast<int>(state.range(0)));
  const auto bases = bases_for(w.dims(), BasisKind::pauli);
  for (auto _ : state)
    benchmark::DoNotOptimize(decompose(w, bases));
}

void BM_ContourSerial(benchmark::State& state)
{
  const auto axis = efficiency_axis(static_cast<int>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(contour_grid_serial(0.25, 0.75, axis, axis));
}

void BM_ContourParallel(benchmark::State& state)
{
  const auto axis = efficiency_axis(static_cast<int>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(contour_grid(0.25, 0.75, axis, axis));
}

}  // namespace

BENCHMARK(BM_DecomposeSerial)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_DecomposeParallel)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_ContourSerial)->Arg(100)->Arg(1000)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_ContourParallel)->Arg(100)->Arg(1000)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
