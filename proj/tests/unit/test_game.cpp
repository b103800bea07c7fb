#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "qge/game.hpp"
#include "qge/rng.hpp"

using namespace qge;

namespace {

Game common_interest_2x2() {
  std::vector<double> u = {270.0, 126.0, 0.0, 270.0};
  return Game({2, 2}, {u, u});
}

Game coordination_2x2() {
  std::vector<double> u = {2.0, 1.0, 1.0, 2.0};
  return Game({2, 2}, {u, u});
}

Game random_game(const std::vector<int>& counts, Rng& rng, double lo = 0.0,
                 double hi = 1.0) {
  std::size_t joint = 1;
  for (int m : counts) joint *= static_cast<std::size_t>(m);
  std::vector<std::vector<double>> utils(counts.size());
  for (auto& u : utils) {
    u.resize(joint);
    for (double& v : u) v = rng.uniform(lo, hi);
  }
  return Game(counts, utils);
}

MixedProfile random_profile(const Game& game, Rng& rng) {
  MixedProfile p;
  for (int i = 0; i < game.num_players(); ++i) {
    p.probs.push_back(rng.dirichlet_uniform(static_cast<std::size_t>(game.strategy_count(i))));
  }
  return p;
}

}  // namespace

TEST_CASE("joint indexing is row-major with player 0 slowest") {
  Game g({2, 3}, {std::vector<double>(6, 0.0), std::vector<double>(6, 0.0)});
  CHECK(g.joint_index({0, 0}) == 0);
  CHECK(g.joint_index({0, 2}) == 2);
  CHECK(g.joint_index({1, 0}) == 3);
  CHECK(g.joint_index({1, 2}) == 5);
  CHECK(g.unpack(4) == std::vector<int>{1, 1});
}

TEST_CASE("expected utility of the common-interest case distribution is 201") {
  Game g = common_interest_2x2();
  JointDistribution p{{1.0 / 3.0, 1.0 / 6.0, 1.0 / 6.0, 1.0 / 3.0}};
  CHECK(expected_utility(g, p, 0) == doctest::Approx(201.0).epsilon(1e-12));
  CHECK(expected_utility(g, p, 1) == doctest::Approx(201.0).epsilon(1e-12));
}

TEST_CASE("expected utility of a constant game is the constant") {
  const double c = 3.25;
  Game g({2, 2}, {std::vector<double>(4, c), std::vector<double>(4, c)});
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    JointDistribution p{rng.dirichlet_uniform(4)};
    CHECK(expected_utility(g, p, 0) == doctest::Approx(c).epsilon(1e-12));
  }
}

TEST_CASE("expected utility matches an independent double loop on random 3x2 games") {
  Rng rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    Game g = random_game({3, 2}, rng, -2.0, 2.0);
    JointDistribution p{rng.dirichlet_uniform(6)};
    for (int i = 0; i < 2; ++i) {
      // oracle: explicit loop over both strategy coordinates
      double direct = 0.0;
      for (int s0 = 0; s0 < 3; ++s0) {
        for (int s1 = 0; s1 < 2; ++s1) {
          std::size_t flat = static_cast<std::size_t>(s0) * 2 + static_cast<std::size_t>(s1);
          direct += p.p[flat] * g.utility(i, {s0, s1});
        }
      }
      CHECK(expected_utility(g, p, i) == doctest::Approx(direct).epsilon(1e-12));
    }
  }
}

TEST_CASE("expected utility is linear in the distribution") {
  Rng rng(23);
  Game g = random_game({2, 3}, rng, -1.0, 4.0);
  for (int trial = 0; trial < 20; ++trial) {
    JointDistribution p{rng.dirichlet_uniform(6)};
    JointDistribution q{rng.dirichlet_uniform(6)};
    double alpha = rng.next_double();
    JointDistribution mix;
    for (std::size_t s = 0; s < 6; ++s) {
      mix.p.push_back(alpha * p.p[s] + (1.0 - alpha) * q.p[s]);
    }
    for (int i = 0; i < 2; ++i) {
      double lhs = expected_utility(g, mix, i);
      double rhs = alpha * expected_utility(g, p, i) +
                   (1.0 - alpha) * expected_utility(g, q, i);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
    }
  }
}

TEST_CASE("uniform profile of the coordination game has zero regret") {
  Game g = coordination_2x2();
  MixedProfile p{{{0.5, 0.5}, {0.5, 0.5}}};
  CHECK(nash_regret(g, p, 0) == doctest::Approx(0.0));
  CHECK(nash_regret(g, p, 1) == doctest::Approx(0.0));
}

TEST_CASE("regret on a dominated strategy equals the dominance gap") {
  // row 0 dominates row 1 by exactly 0.75 against every column
  std::vector<double> u0 = {1.0, 2.0, 0.25, 1.25};
  std::vector<double> u1 = {0.0, 0.0, 0.0, 0.0};
  Game g({2, 2}, {u0, u1});
  MixedProfile p{{{0.0, 1.0}, {0.3, 0.7}}};
  CHECK(nash_regret(g, p, 0) == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("correlated regret of the reference correlated equilibria is zero") {
  SUBCASE("diagonal half-half under the coordination game") {
    Game g = coordination_2x2();
    JointDistribution p{{0.5, 0.0, 0.0, 0.5}};
    CHECK(correlated_regret(g, p, 0) == doctest::Approx(0.0));
    CHECK(correlated_regret(g, p, 1) == doctest::Approx(0.0));
  }
  SUBCASE("common-interest case distribution") {
    Game g = common_interest_2x2();
    JointDistribution p{{1.0 / 3.0, 1.0 / 6.0, 1.0 / 6.0, 1.0 / 3.0}};
    CHECK(correlated_regret(g, p, 0) == doctest::Approx(0.0));
    CHECK(correlated_regret(g, p, 1) == doctest::Approx(0.0));
  }
  SUBCASE("tilted diagonal at cos^2 = 0.7") {
    Game g = coordination_2x2();
    double c2 = 0.7, s2 = 0.3;
    JointDistribution p{{c2 / 2, s2 / 2, s2 / 2, c2 / 2}};
    CHECK(correlated_regret(g, p, 0) == doctest::Approx(0.0));
    CHECK(correlated_regret(g, p, 1) == doctest::Approx(0.0));
  }
}

TEST_CASE("scaling one player's utilities scales their regrets linearly") {
  Rng rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    Game g = random_game({3, 3}, rng, -1.0, 1.0);
    double lambda = rng.uniform(0.25, 4.0);
    auto scaled_utils = std::vector<std::vector<double>>{g.utility_tensor(0),
                                                         g.utility_tensor(1)};
    for (double& v : scaled_utils[0]) v *= lambda;
    Game scaled({3, 3}, scaled_utils);

    MixedProfile p = random_profile(g, rng);
    double base = nash_regret(g, p, 0);
    CHECK(nash_regret(scaled, p, 0) ==
          doctest::Approx(lambda * base).epsilon(1e-9));

    JointDistribution joint{rng.dirichlet_uniform(9)};
    double base_ce = correlated_regret(g, joint, 0);
    CHECK(correlated_regret(scaled, joint, 0) ==
          doctest::Approx(lambda * base_ce).epsilon(1e-9));
  }
}

TEST_CASE("shifting one player's utilities leaves regrets unchanged") {
  Rng rng(37);
  for (int trial = 0; trial < 30; ++trial) {
    Game g = random_game({2, 3}, rng, -1.0, 1.0);
    double shift = rng.uniform(-5.0, 5.0);
    auto utils = std::vector<std::vector<double>>{g.utility_tensor(0), g.utility_tensor(1)};
    for (double& v : utils[0]) v += shift;
    Game shifted({2, 3}, utils);

    MixedProfile p = random_profile(g, rng);
    CHECK(nash_regret(shifted, p, 0) ==
          doctest::Approx(nash_regret(g, p, 0)).epsilon(1e-9));
    JointDistribution joint{rng.dirichlet_uniform(6)};
    CHECK(correlated_regret(shifted, joint, 0) ==
          doctest::Approx(correlated_regret(g, joint, 0)).epsilon(1e-9));
  }
}

TEST_CASE("full-support product profiles: correlated regret never exceeds nash regret") {
  Rng rng(41);
  for (int trial = 0; trial < 50; ++trial) {
    Game g = random_game({2, 2}, rng);
    MixedProfile p = random_profile(g, rng);
    JointDistribution joint = to_joint(g, p);
    for (int i = 0; i < 2; ++i) {
      CHECK(correlated_regret(g, joint, i) <= nash_regret(g, p, i) + 1e-9);
    }
  }
}

TEST_CASE("game and distribution validation errors") {
  Game g = coordination_2x2();
  CHECK_THROWS_AS(expected_utility(g, JointDistribution{{0.5, 0.5}}, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(expected_utility(g, JointDistribution{{0.25, 0.25, 0.25, 0.25}}, 5),
                  std::invalid_argument);
  MixedProfile bad{{{0.5, 0.5}, {0.9, 0.2}}};
  CHECK_THROWS_AS(nash_regret(g, bad, 0), std::invalid_argument);
  // all mass below the support threshold
  MixedProfile degenerate{{{0.5, 0.5}, {0.5, 0.5}}};
  CHECK_THROWS_AS(nash_regret(g, degenerate, 0, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(Game({2, 2}, {{1.0, 2.0}, {1.0, 2.0}}), std::invalid_argument);
  CHECK_THROWS_AS(
      Game({2}, {std::vector<double>{0.5, 1.5}}, /*positively_normalized=*/true),
      std::invalid_argument);
}
