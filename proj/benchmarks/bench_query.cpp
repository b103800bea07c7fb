#include <benchmark/benchmark.h>

#include "qge/query.hpp"

namespace {

void BM_GroverSimulate(benchmark::State& state) {
  std::size_t n = static_cast<std::size_t>(state.range(0));
  qge::QueryAlgorithm alg = qge::grover(n, 3, {1});
  qge::Oracle oracle(n, {1});
  for (auto _ : state) {
    benchmark::DoNotOptimize(qge::simulate(alg, oracle));
  }
}
BENCHMARK(BM_GroverSimulate)->Arg(16)->Arg(64)->Arg(256);

void BM_QueryMagnitudes(benchmark::State& state) {
  std::size_t n = static_cast<std::size_t>(state.range(0));
  qge::QueryAlgorithm alg = qge::random_circuit(n, 4, 9);
  for (auto _ : state) {
    benchmark::DoNotOptimize(qge::query_magnitudes(alg));
  }
}
BENCHMARK(BM_QueryMagnitudes)->Arg(16)->Arg(64);

void BM_PairwiseCheck(benchmark::State& state) {
  std::size_t n = static_cast<std::size_t>(state.range(0));
  qge::QueryAlgorithm alg = qge::random_circuit(n, 4, 21);
  for (auto _ : state) {
    benchmark::DoNotOptimize(qge::pairwise_check(alg));
  }
}
BENCHMARK(BM_PairwiseCheck)->Arg(16)->Arg(64);

void BM_RandomCircuitBuild(benchmark::State& state) {
  std::size_t n = static_cast<std::size_t>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(qge::random_circuit(n, 4, ++seed));
  }
}
BENCHMARK(BM_RandomCircuitBuild)->Arg(16)->Arg(64);

}  // namespace
