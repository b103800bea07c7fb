#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "qge/io.hpp"
#include "qge/repro.hpp"
#include "qge/rng.hpp"
#include "qge/sampling.hpp"

using namespace qge;

namespace {

Game normalized_coordination() { return refcases::coordination_game().normalized_to_unit(); }

Game normalized_random_game(const std::vector<int>& counts, Rng& rng) {
  std::size_t joint = 1;
  for (int m : counts) joint *= static_cast<std::size_t>(m);
  std::vector<std::vector<double>> utils(counts.size());
  for (auto& u : utils) {
    u.resize(joint);
    for (double& v : u) v = rng.next_double();
  }
  return Game(counts, utils, /*positively_normalized=*/true);
}

}  // namespace

TEST_CASE("fidelity sample count constant and scaling") {
  CHECK(fidelity_sample_count(2, 0.1) == 1600000);
  // halving eps quadruples k when the ratio is exact
  CHECK(fidelity_sample_count(2, 0.05) == 4 * fidelity_sample_count(2, 0.1));
  CHECK(fidelity_sample_count(4, 0.1) == 4 * fidelity_sample_count(2, 0.1));
  CHECK_THROWS_AS(fidelity_sample_count(2, 0.0), std::invalid_argument);
}

TEST_CASE("point-mass hidden profiles reproduce exactly at any k") {
  Game g = normalized_coordination();
  MixedProfile pure{{{1.0, 0.0}, {1.0, 0.0}}};
  for (std::uint64_t k : {1ull, 7ull, 1000ull}) {
    SampleNashOracle oracle(g, pure, 99);
    MixedProfile q = empirical_profile(oracle, k);
    CHECK(q.probs[0][0] == 1.0);
    CHECK(q.probs[1][0] == 1.0);
  }
}

TEST_CASE("empirical profiles of the uniform equilibrium land within eps") {
  Game g = normalized_coordination();
  MixedProfile uniform{{{0.5, 0.5}, {0.5, 0.5}}};
  // smoke-scale version of the fidelity-constants experiment
  const std::uint64_t k = 100000;
  Rng master(5);
  for (int trial = 0; trial < 5; ++trial) {
    SampleNashOracle oracle(g, uniform, master.fork(static_cast<std::uint64_t>(trial)).next_u64());
    MixedProfile q = empirical_profile(oracle, k);
    for (int i = 0; i < 2; ++i) {
      double l1 = std::abs(q.probs[static_cast<std::size_t>(i)][0] - 0.5) +
                  std::abs(q.probs[static_cast<std::size_t>(i)][1] - 0.5);
      CHECK(l1 <= 0.1);
      double sum = q.probs[static_cast<std::size_t>(i)][0] + q.probs[static_cast<std::size_t>(i)][1];
      CHECK(sum == 1.0);  // counts / k sums exactly
    }
  }
}

TEST_CASE("oracle contract violations throw") {
  Game raw = refcases::coordination_game();  // not flagged normalized
  MixedProfile uniform{{{0.5, 0.5}, {0.5, 0.5}}};
  CHECK_THROWS_AS(SampleNashOracle(raw, uniform, 1), std::invalid_argument);
  Game g = normalized_coordination();
  MixedProfile bad{{{1.0, 0.0}, {0.0, 1.0}}};  // miscoordinated, not an equilibrium
  CHECK_THROWS_AS(SampleNashOracle(g, bad, 1), std::invalid_argument);
  CHECK_THROWS_AS(reduce_to_approx_nash(raw, 0.1, 1), std::invalid_argument);
  CHECK_THROWS_AS(reduce_to_approx_nash(g, 1.5, 1), std::invalid_argument);
}

TEST_CASE("reduction pipeline on a game with a unique pure equilibrium") {
  // row/column 0 strictly dominate, so the fixed equilibrium is pure
  std::vector<double> u0 = {1.0, 0.9, 0.1, 0.0};
  std::vector<double> u1 = {1.0, 0.1, 0.9, 0.0};
  Game g({2, 2}, {u0, u1}, true);
  ReductionReport report = reduce_to_approx_nash(g, 0.25, 7);
  CHECK(report.q.probs[0][0] == 1.0);
  CHECK(report.q.probs[1][0] == 1.0);
  CHECK(report.regret == 0.0);
  CHECK(report.l1_within_eps);
}

TEST_CASE("reduction reports are byte-identical under a fixed seed") {
  std::vector<double> u0 = {1.0, 0.9, 0.1, 0.0};
  std::vector<double> u1 = {1.0, 0.1, 0.9, 0.0};
  Game g({2, 2}, {u0, u1}, true);
  auto a = io::reduction_report_to_json(reduce_to_approx_nash(g, 0.5, 42));
  auto b = io::reduction_report_to_json(reduce_to_approx_nash(g, 0.5, 42));
  CHECK(a == b);
}

TEST_CASE("practical mode uses far fewer samples") {
  std::vector<double> u0 = {1.0, 0.9, 0.1, 0.0};
  std::vector<double> u1 = {1.0, 0.1, 0.9, 0.0};
  Game g({2, 2}, {u0, u1}, true);
  ReductionReport fid = reduce_to_approx_nash(g, 0.1, 7, SampleCountMode::kFidelity);
  ReductionReport prac = reduce_to_approx_nash(g, 0.1, 7, SampleCountMode::kPractical);
  CHECK(fid.k == 1600000);
  CHECK(prac.k < fid.k / 10);
  CHECK(prac.regret <= 0.2);
}

TEST_CASE("sampled empirical profiles satisfy the doubled-accuracy guarantee") {
  Game g = normalized_coordination();
  MixedProfile uniform{{{0.5, 0.5}, {0.5, 0.5}}};
  const double eps = 0.1;
  Rng master(11);
  for (int trial = 0; trial < 10; ++trial) {
    SampleNashOracle oracle(g, uniform, master.fork(static_cast<std::uint64_t>(trial)).next_u64());
    MixedProfile q = empirical_profile(oracle, 20000);
    bool within = true;
    for (int i = 0; i < 2; ++i) {
      double l1 = std::abs(q.probs[static_cast<std::size_t>(i)][0] - 0.5) +
                  std::abs(q.probs[static_cast<std::size_t>(i)][1] - 0.5);
      within = within && l1 <= eps;
    }
    REQUIRE(within);  // overwhelmingly likely at this k
    for (int i = 0; i < 2; ++i) {
      CHECK(nash_regret(g, q, i) <= 2.0 * eps + 1e-9);
    }
  }
}

TEST_CASE("perturbations within the l1 ball") {
  Rng rng(13);
  MixedProfile p{{{0.2, 0.3, 0.5}, {0.6, 0.4}}};
  for (int trial = 0; trial < 200; ++trial) {
    MixedProfile q = perturb_within_l1(p, 0.15, rng);
    for (std::size_t i = 0; i < 2; ++i) {
      double l1 = 0.0, sum = 0.0;
      for (std::size_t t = 0; t < q.probs[i].size(); ++t) {
        CHECK(q.probs[i][t] >= 0.0);
        l1 += std::abs(q.probs[i][t] - p.probs[i][t]);
        sum += q.probs[i][t];
      }
      CHECK(l1 <= 0.15 + 1e-12);
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("zero-radius perturbation check is exact") {
  Game g = normalized_coordination();
  MixedProfile uniform{{{0.5, 0.5}, {0.5, 0.5}}};
  PerturbationStats stats = verify_perturbation_bound(g, uniform, 0.0, 50, 3);
  CHECK(stats.violations == 0);
  CHECK(stats.max_regret <= 1e-12);
}

TEST_CASE("perturbation sweep never breaks the doubled-accuracy bound") {
  Rng rng(17);
  int games_checked = 0;
  for (int trial = 0; trial < 12; ++trial) {
    int m = 2 + trial % 3;
    Game g = normalized_random_game({m, m}, rng);
    EquilibriumSet set = support_enumeration_bimatrix(g);
    for (const auto& eq : set.equilibria) {
      PerturbationStats stats =
          verify_perturbation_bound(g, eq.profile, 0.05, 200, 100 + static_cast<std::uint64_t>(trial));
      CHECK(stats.violations == 0);
      CHECK(stats.full_regret_violations == 0);
      ++games_checked;
    }
  }
  CHECK(games_checked > 0);
}

TEST_CASE("worst-case mass shift stays within the doubled bound") {
  Game g = normalized_coordination();
  MixedProfile p{{{0.5, 0.5}, {0.5, 0.5}}};
  const double eps = 0.1;
  // push eps/2 of each player's mass onto one strategy: l1 distance = eps
  MixedProfile q{{{0.5 + eps / 2, 0.5 - eps / 2}, {0.5 + eps / 2, 0.5 - eps / 2}}};
  for (int i = 0; i < 2; ++i) {
    double r = support_restricted_regret(g, q, p, i);
    CHECK(r <= 2.0 * eps + 1e-9);
    // the moved mass is worth about eps times the utility span
    CHECK(r == doctest::Approx(eps).epsilon(1e-9));
  }
}
