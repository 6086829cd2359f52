#include <benchmark/benchmark.h>

#include "qglab/random_models.hpp"
#include "qglab/rigidity.hpp"
#include "qglab/symmetry.hpp"

using namespace qglab;

namespace {

void BM_GueSample(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  SeededRng rng(1u);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_gue_traceless(n, rng));
  }
}
BENCHMARK(BM_GueSample)->Arg(4)->Arg(8)->Arg(16);

void BM_SampleSystem(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int d = n * n / 2;
  std::uint64_t trial = 0;
  SeededRng master(2u);
  for (auto _ : state) {
    SeededRng rng = master.derive(trial++);
    benchmark::DoNotOptimize(sample_qg_nd(n, d, rng));
  }
}
BENCHMARK(BM_SampleSystem)->Arg(3)->Arg(5)->Arg(7);

void BM_QuantumAdjacency(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  SeededRng rng(3u);
  OperatorSystem v = sample_qg_nd(n, n * n / 2, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(quantum_adjacency(v));
  }
}
BENCHMARK(BM_QuantumAdjacency)->Arg(3)->Arg(5)->Arg(7);

void BM_Stabilizer(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  SeededRng rng(4u);
  OperatorSystem v = sample_qg_nd(n, n * n / 2, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(stabilizer_lie_algebra(v));
  }
}
BENCHMARK(BM_Stabilizer)->Arg(3)->Arg(4)->Arg(5)->Arg(6);

void BM_RegularGraph(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::uint64_t trial = 0;
  SeededRng master(5u);
  for (auto _ : state) {
    SeededRng rng = master.derive(trial++);
    benchmark::DoNotOptimize(sample_gnr(n, 3, rng));
  }
}
BENCHMARK(BM_RegularGraph)->Arg(20)->Arg(50)->Arg(100);

void BM_RigidityCertificate(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  SeededRng rng(6u);
  Graph g = sample_gnp(n, 0.5, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(quantum_rigidity_certificate(g));
  }
}
BENCHMARK(BM_RigidityCertificate)->Arg(20)->Arg(30)->Arg(50);

void BM_CharPoly(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  SeededRng rng(7u);
  Graph g = sample_gnr(n, 3, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(char_poly_integer(g));
  }
}
BENCHMARK(BM_CharPoly)->Arg(10)->Arg(20)->Arg(40);

void BM_AutSearch(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  SeededRng system_rng(8u);
  OperatorSystem v = sample_qg_nd(n, 3, system_rng);
  std::uint64_t trial = 0;
  for (auto _ : state) {
    SeededRng rng = SeededRng(9u).derive(trial++);
    benchmark::DoNotOptimize(discrete_aut_search(v, 2, rng));
  }
}
BENCHMARK(BM_AutSearch)->Arg(3)->Arg(4);

}  // namespace

BENCHMARK_MAIN();
