#include <benchmark/benchmark.h>

#include "qge/eol.hpp"
#include "qge/rng.hpp"
#include "qge/solve.hpp"

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

void BM_SupportEnumeration(benchmark::State& state) {
  qge::Game game = random_game(static_cast<int>(state.range(0)), 23);
  for (auto _ : state) {
    benchmark::DoNotOptimize(qge::support_enumeration_bimatrix(game));
  }
}
BENCHMARK(BM_SupportEnumeration)->DenseRange(2, 6);

void BM_CorrelatedEqLp(benchmark::State& state) {
  int m = static_cast<int>(state.range(0));
  qge::Game game = random_game(m, 29);
  qge::Rng rng(31);
  std::vector<double> objective(game.joint_count());
  for (double& v : objective) v = rng.next_double();
  for (auto _ : state) {
    benchmark::DoNotOptimize(qge::correlated_eq_lp(game, objective));
  }
}
BENCHMARK(BM_CorrelatedEqLp)->DenseRange(2, 6);

void BM_SamplePure(benchmark::State& state) {
  qge::MixedProfile profile{{{0.2, 0.3, 0.5}, {0.25, 0.25, 0.5}}};
  qge::Rng rng(37);
  for (auto _ : state) {
    benchmark::DoNotOptimize(qge::sample_pure(profile, rng));
  }
}
BENCHMARK(BM_SamplePure);

void BM_EndOfLineSolve(benchmark::State& state) {
  qge::EolInstance inst = qge::random_eol_instance(static_cast<int>(state.range(0)), 41);
  for (auto _ : state) {
    benchmark::DoNotOptimize(qge::end_of_line_solve(inst));
  }
}
BENCHMARK(BM_EndOfLineSolve)->Arg(10)->Arg(16)->Arg(20);

}  // namespace

BENCHMARK_MAIN();
