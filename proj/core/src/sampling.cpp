#include "qge/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qge {

SampleNashOracle::SampleNashOracle(Game game, MixedProfile hidden, std::uint64_t seed)
    : game_(std::move(game)), hidden_(std::move(hidden)), rng_(seed) {
  if (game_.num_players() != 2) {
    throw std::invalid_argument("sample oracle: 2-player games only");
  }
  if (!game_.positively_normalized()) {
    throw std::invalid_argument("sample oracle: game must be positively normalized");
  }
  hidden_.validate(game_);
  for (int i = 0; i < 2; ++i) {
    if (nash_regret(game_, hidden_, i) > 1e-8) {
      throw std::invalid_argument("sample oracle: hidden profile is not an equilibrium");
    }
  }
}

SampleNashOracle SampleNashOracle::from_game(const Game& game, std::uint64_t seed) {
  EquilibriumSet set = support_enumeration_bimatrix(game);
  return SampleNashOracle(game, set.first(), seed);
}

std::vector<int> SampleNashOracle::draw() {
  Rng call_rng = rng_.fork(calls_++);
  return sample_pure(hidden_, call_rng);
}

std::uint64_t fidelity_sample_count(int m, double eps) {
  if (m <= 0 || eps <= 0.0 || eps > 1.0) {
    throw std::invalid_argument("fidelity_sample_count: need m >= 1, eps in (0,1]");
  }
  double k = 4000.0 * static_cast<double>(m) * static_cast<double>(m) / (eps * eps);
  return static_cast<std::uint64_t>(std::ceil(k));
}

MixedProfile empirical_profile(SampleNashOracle& oracle, std::uint64_t k) {
  if (k == 0) throw std::invalid_argument("empirical_profile: k must be positive");
  const Game& game = oracle.game();
  std::vector<std::vector<std::uint64_t>> counts(2);
  for (int i = 0; i < 2; ++i) {
    counts[static_cast<std::size_t>(i)].assign(
        static_cast<std::size_t>(game.strategy_count(i)), 0);
  }
  for (std::uint64_t call = 0; call < k; ++call) {
    auto s = oracle.draw();
    for (int i = 0; i < 2; ++i) {
      ++counts[static_cast<std::size_t>(i)][static_cast<std::size_t>(s[static_cast<std::size_t>(i)])];
    }
  }
  MixedProfile q;
  q.probs.resize(2);
  for (int i = 0; i < 2; ++i) {
    auto& p = q.probs[static_cast<std::size_t>(i)];
    p.resize(counts[static_cast<std::size_t>(i)].size());
    std::size_t top = 0;
    for (std::size_t t = 0; t < p.size(); ++t) {
      p[t] = static_cast<double>(counts[static_cast<std::size_t>(i)][t]) /
             static_cast<double>(k);
      if (counts[static_cast<std::size_t>(i)][t] > counts[static_cast<std::size_t>(i)][top]) {
        top = t;
      }
    }
    // counts/k rounding can leave the total an ulp off 1; absorb it into
    // the largest coordinate so the vector sums to 1 exactly
    double others = 0.0;
    for (std::size_t t = 0; t < p.size(); ++t) {
      if (t != top) others += p[t];
    }
    p[top] = 1.0 - others;
  }
  return q;
}

namespace {

double l1_distance(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d += std::abs(a[i] - b[i]);
  return d;
}

// smallest k at which a per-coordinate Hoeffding radius certifies
// ||q_i - p_i||_1 <= eps with failure probability ~0.01 per player
std::uint64_t sequential_sample_count(SampleNashOracle& oracle, double eps,
                                      std::uint64_t k_cap) {
  const int m = std::max(oracle.game().strategy_count(0), oracle.game().strategy_count(1));
  double delta = 0.005;
  std::uint64_t k = 1024;
  for (int round = 0; round < 40; ++round) {
    // mean l1 bound sqrt(m/k) plus a deviation term; union over rounds
    double round_delta = delta / static_cast<double>((round + 1) * (round + 2));
    double radius = std::sqrt(static_cast<double>(m) / static_cast<double>(k)) +
                    std::sqrt(2.0 * std::log(2.0 / round_delta) / static_cast<double>(k));
    if (radius <= eps || k >= k_cap) return std::min(k, k_cap);
    k *= 2;
  }
  return k_cap;
}

}  // namespace

ReductionReport reduce_to_approx_nash(const Game& game, double eps, std::uint64_t seed,
                                      SampleCountMode mode) {
  if (game.num_players() != 2) {
    throw std::invalid_argument("reduce_to_approx_nash: 2-player games only");
  }
  if (!game.positively_normalized()) {
    throw std::invalid_argument(
        "reduce_to_approx_nash: game must be positively normalized (opt-in rescale via "
        "Game::normalized_to_unit)");
  }
  if (eps <= 0.0 || eps > 1.0) {
    throw std::invalid_argument("reduce_to_approx_nash: eps must be in (0,1]");
  }
  const int m = std::max(game.strategy_count(0), game.strategy_count(1));

  SampleNashOracle oracle = SampleNashOracle::from_game(game, seed);
  std::uint64_t k = fidelity_sample_count(m, eps);
  if (mode == SampleCountMode::kPractical) {
    SampleNashOracle probe = SampleNashOracle::from_game(game, seed ^ 0x5bd1e995u);
    k = sequential_sample_count(probe, eps, k);
  }

  ReductionReport report;
  report.m = m;
  report.eps = eps;
  report.k = k;
  report.q = empirical_profile(oracle, k);
  for (int i = 0; i < 2; ++i) {
    report.l1_distances.push_back(l1_distance(report.q.probs[static_cast<std::size_t>(i)],
                                              oracle.hidden().probs[static_cast<std::size_t>(i)]));
  }
  report.l1_within_eps =
      report.l1_distances[0] <= eps && report.l1_distances[1] <= eps;
  report.regret = 0.0;
  for (int i = 0; i < 2; ++i) {
    report.regret = std::max(report.regret, nash_regret(game, report.q, i));
  }
  return report;
}

double support_restricted_regret(const Game& game, const MixedProfile& q,
                                 const MixedProfile& support_reference, int player,
                                 double support_tol) {
  game.require_player(player);
  auto v = unilateral_payoffs(game, q, player);
  double best = *std::max_element(v.begin(), v.end());
  double worst_supported = best;
  bool any = false;
  const auto& ref = support_reference.probs[static_cast<std::size_t>(player)];
  for (std::size_t t = 0; t < v.size(); ++t) {
    if (ref[t] > support_tol) {
      worst_supported = any ? std::min(worst_supported, v[t]) : v[t];
      any = true;
    }
  }
  if (!any) throw std::invalid_argument("support_restricted_regret: empty reference support");
  return std::max(0.0, best - worst_supported);
}

MixedProfile perturb_within_l1(const MixedProfile& p, double eps, Rng& rng) {
  MixedProfile q = p;
  for (auto& pi : q.probs) {
    auto target = rng.dirichlet_uniform(pi.size());
    double dist = l1_distance(pi, target);
    double radius = eps * rng.next_double();
    // walk from p toward the simplex draw; the segment stays inside the
    // simplex so no projection is needed, and l1 length scales linearly
    double step = dist > 0.0 ? std::min(1.0, radius / dist) : 0.0;
    for (std::size_t t = 0; t < pi.size(); ++t) {
      pi[t] += step * (target[t] - pi[t]);
    }
  }
  return q;
}

PerturbationStats verify_perturbation_bound(const Game& game, const MixedProfile& p, double eps,
                                int trials, std::uint64_t seed) {
  if (!game.positively_normalized()) {
    throw std::invalid_argument("verify_perturbation_bound: game must be positively normalized");
  }
  p.validate(game);
  for (int i = 0; i < game.num_players(); ++i) {
    if (nash_regret(game, p, i) > 1e-8) {
      throw std::invalid_argument("verify_perturbation_bound: reference profile is not an equilibrium");
    }
  }
  const double bound = 2.0 * eps + 1e-9;
  PerturbationStats stats;
  Rng rng(seed);
  for (int trial = 0; trial < trials; ++trial) {
    Rng trial_rng = rng.fork(static_cast<std::uint64_t>(trial));
    MixedProfile q = eps == 0.0 ? p : perturb_within_l1(p, eps, trial_rng);
    ++stats.trials;

    bool inside_support = true;
    for (int i = 0; i < game.num_players(); ++i) {
      for (std::size_t t = 0; t < q.probs[static_cast<std::size_t>(i)].size(); ++t) {
        if (q.probs[static_cast<std::size_t>(i)][t] > tol::kSupport &&
            p.probs[static_cast<std::size_t>(i)][t] <= tol::kSupport) {
          inside_support = false;
        }
      }
    }
    for (int i = 0; i < game.num_players(); ++i) {
      double restricted = support_restricted_regret(game, q, p, i);
      stats.max_regret = std::max(stats.max_regret, restricted);
      if (restricted > bound) ++stats.violations;
      double full = nash_regret(game, q, i);
      stats.max_full_regret = std::max(stats.max_full_regret, full);
      if (inside_support && full > bound) ++stats.full_regret_violations;
    }
  }
  return stats;
}

}  // namespace qge
