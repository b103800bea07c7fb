#include <benchmark/benchmark.h>

#include "qge/deviation.hpp"
#include "qge/rng.hpp"

namespace {

qge::Game random_game(int m, std::uint64_t seed) {
  qge::Rng rng(seed);
  std::size_t joint = static_cast<std::size_t>(m) * static_cast<std::size_t>(m);
  std::vector<std::vector<double>> utils(2);
  for (auto& u : utils) {
    u.resize(joint);
    for (double& v : u) v = rng.next_double();
  }
  return qge::Game({m, m}, utils);
}

void BM_BestDeviationClosedForm(benchmark::State& state) {
  qge::Game game = random_game(2, 7);
  qge::DensityMatrix rho = qge::random_density({2, 2}, 11);
  for (auto _ : state) {
    auto cert = qge::best_quantum_deviation(game, rho, 0, qge::DeviationMethod::kClosedForm2);
    benchmark::DoNotOptimize(cert.primal_value);
  }
}
BENCHMARK(BM_BestDeviationClosedForm);

void BM_BestDeviationBarrier(benchmark::State& state) {
  int m = static_cast<int>(state.range(0));
  qge::Game game = random_game(m, 7);
  qge::DensityMatrix rho = qge::random_density({m, m}, 11);
  for (auto _ : state) {
    auto cert = qge::best_quantum_deviation(game, rho, 0, qge::DeviationMethod::kBarrier);
    benchmark::DoNotOptimize(cert.primal_value);
  }
}
BENCHMARK(BM_BestDeviationBarrier)->DenseRange(2, 6);

void BM_ApplyChannel(benchmark::State& state) {
  int m = static_cast<int>(state.range(0));
  qge::DensityMatrix rho = qge::random_density({m, m}, 3);
  qge::Rng rng(5);
  qge::KrausChannel ch = qge::random_kraus_channel(0, m, m * m, rng);
  for (auto _ : state) {
    auto out = qge::apply_channel(rho, ch);
    benchmark::DoNotOptimize(out.entries());
  }
}
BENCHMARK(BM_ApplyChannel)->DenseRange(2, 6);

void BM_RandomChannelSearch(benchmark::State& state) {
  qge::Game game = random_game(3, 13);
  qge::DensityMatrix rho = qge::random_density({3, 3}, 17);
  for (auto _ : state) {
    benchmark::DoNotOptimize(qge::random_channel_search(game, rho, 0, 8, 19));
  }
}
BENCHMARK(BM_RandomChannelSearch);

}  // namespace
