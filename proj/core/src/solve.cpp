#include "qge/solve.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "qge/lp.hpp"
#include "qge/rng.hpp"

namespace qge {

const MixedProfile& EquilibriumSet::first() const {
  if (equilibria.empty()) throw std::runtime_error("equilibrium set is empty");
  return equilibria.front().profile;
}

namespace {

std::vector<int> mask_to_support(unsigned mask, int m) {
  std::vector<int> support;
  for (int t = 0; t < m; ++t) {
    if (mask & (1u << t)) support.push_back(t);
  }
  return support;
}

// Solve the indifference system: find q on `support_other` making `player`
// indifferent across `support_own`, together with the common value v.
// Returns false when the system is singular or the solution leaves the
// simplex / violates best-response consistency.
bool solve_indifference(const Game& game, int player, const std::vector<int>& support_own,
                        const std::vector<int>& support_other, std::vector<double>& q_out,
                        double& value_out) {
  const int other = 1 - player;
  const int r = static_cast<int>(support_own.size());
  if (static_cast<int>(support_other.size()) != r) return false;

  auto payoff = [&](int own, int opp) {
    std::vector<int> s(2);
    s[player] = own;
    s[other] = opp;
    return game.utility(player, s);
  };

  // unknowns: q over support_other, then v
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(r + 1, r + 1);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(r + 1);
  for (int row = 0; row < r; ++row) {
    for (int col = 0; col < r; ++col) {
      A(row, col) = payoff(support_own[static_cast<std::size_t>(row)],
                           support_other[static_cast<std::size_t>(col)]);
    }
    A(row, r) = -1.0;
  }
  for (int col = 0; col < r; ++col) A(r, col) = 1.0;
  b(r) = 1.0;

  Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
  lu.setThreshold(1e-10);
  if (!lu.isInvertible()) return false;  // degenerate support, skip
  Eigen::VectorXd sol = lu.solve(b);

  const int m_other = game.strategy_count(other);
  std::vector<double> q(static_cast<std::size_t>(m_other), 0.0);
  for (int col = 0; col < r; ++col) {
    double mass = sol(col);
    if (mass < -1e-9) return false;
    q[static_cast<std::size_t>(support_other[static_cast<std::size_t>(col)])] =
        std::max(0.0, mass);
  }
  double total = 0.0;
  for (double v : q) total += v;
  if (std::abs(total - 1.0) > 1e-8) return false;
  for (double& v : q) v /= total;

  value_out = sol(r);
  // best-response consistency: nothing outside the support beats v
  const int m_own = game.strategy_count(player);
  for (int t = 0; t < m_own; ++t) {
    if (std::find(support_own.begin(), support_own.end(), t) != support_own.end()) continue;
    double vt = 0.0;
    for (int opp = 0; opp < m_other; ++opp) {
      vt += q[static_cast<std::size_t>(opp)] * payoff(t, opp);
    }
    if (vt > value_out + 1e-9) return false;
  }
  q_out = std::move(q);
  return true;
}

bool near_duplicate(const MixedProfile& a, const MixedProfile& b) {
  for (std::size_t i = 0; i < a.probs.size(); ++i) {
    for (std::size_t t = 0; t < a.probs[i].size(); ++t) {
      if (std::abs(a.probs[i][t] - b.probs[i][t]) > 1e-7) return false;
    }
  }
  return true;
}

}  // namespace

EquilibriumSet support_enumeration_bimatrix(const Game& game) {
  if (game.num_players() != 2) {
    throw std::invalid_argument("support_enumeration_bimatrix: exactly 2 players required");
  }
  const int m0 = game.strategy_count(0);
  const int m1 = game.strategy_count(1);
  if (m0 > 6 || m1 > 6) {
    throw std::invalid_argument("support_enumeration_bimatrix: at most 6 strategies per player");
  }

  EquilibriumSet set;
  for (int r = 1; r <= std::min(m0, m1); ++r) {
    for (unsigned mask0 = 1; mask0 < (1u << m0); ++mask0) {
      if (std::popcount(mask0) != r) continue;
      auto sup0 = mask_to_support(mask0, m0);
      for (unsigned mask1 = 1; mask1 < (1u << m1); ++mask1) {
        if (std::popcount(mask1) != r) continue;
        auto sup1 = mask_to_support(mask1, m1);

        // player 0's indifference pins player 1's mixture and vice versa
        std::vector<double> q1, q0;
        double v0 = 0.0, v1 = 0.0;
        if (!solve_indifference(game, 0, sup0, sup1, q1, v0)) continue;
        if (!solve_indifference(game, 1, sup1, sup0, q0, v1)) continue;

        MixedProfile profile{{q0, q1}};
        double worst = 0.0;
        bool valid = true;
        for (int i = 0; i < 2 && valid; ++i) {
          double regret = nash_regret(game, profile, i);
          worst = std::max(worst, regret);
          valid = regret <= 1e-8;
        }
        if (!valid) continue;
        bool duplicate = false;
        for (const auto& e : set.equilibria) {
          if (near_duplicate(e.profile, profile)) {
            duplicate = true;
            break;
          }
        }
        if (!duplicate) set.equilibria.push_back({std::move(profile), worst});
      }
    }
  }
  if (set.empty()) {
    throw std::runtime_error(
        "support_enumeration_bimatrix: no equilibrium found (degenerate beyond skip rule)");
  }
  return set;
}

JointDistribution correlated_eq_lp(const Game& game, const std::vector<double>& objective) {
  const std::size_t S = game.joint_count();
  if (S > 64) throw std::invalid_argument("correlated_eq_lp: joint strategy space above 64");
  if (objective.size() != S) throw std::invalid_argument("correlated_eq_lp: objective size");

  // inequality rows: one per (player, from, to) remap
  std::vector<std::array<int, 3>> rows;
  for (int i = 0; i < game.num_players(); ++i) {
    for (int from = 0; from < game.strategy_count(i); ++from) {
      for (int to = 0; to < game.strategy_count(i); ++to) {
        if (to != from) rows.push_back({i, from, to});
      }
    }
  }
  const std::size_t n_ineq = rows.size();
  const std::size_t n = S + n_ineq;  // p plus one slack per row
  const std::size_t m = n_ineq + 1;  // inequalities plus normalization

  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m),
                                            static_cast<Eigen::Index>(n));
  Eigen::VectorXd b = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m));
  for (std::size_t r = 0; r < n_ineq; ++r) {
    auto [i, from, to] = rows[r];
    const std::size_t stride = game.stride(i);
    for (std::size_t flat = 0; flat < S; ++flat) {
      auto s = game.unpack(flat);
      if (s[static_cast<std::size_t>(i)] != from) continue;
      std::size_t deviated = flat + (static_cast<std::size_t>(to) -
                                     static_cast<std::size_t>(from)) * stride;
      A(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(flat)) =
          game.utility(i, deviated) - game.utility(i, flat);
    }
    A(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(S + r)) = 1.0;  // slack
  }
  for (std::size_t flat = 0; flat < S; ++flat) {
    A(static_cast<Eigen::Index>(m - 1), static_cast<Eigen::Index>(flat)) = 1.0;
  }
  b(static_cast<Eigen::Index>(m - 1)) = 1.0;

  Eigen::VectorXd c = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  for (std::size_t flat = 0; flat < S; ++flat) {
    c(static_cast<Eigen::Index>(flat)) = -objective[flat];  // maximize
  }

  LpResult res = solve_lp(c, A, b);

  JointDistribution dist;
  dist.p.resize(S);
  double total = 0.0;
  for (std::size_t flat = 0; flat < S; ++flat) {
    dist.p[flat] = std::max(0.0, res.x(static_cast<Eigen::Index>(flat)));
    total += dist.p[flat];
  }
  for (double& v : dist.p) v /= total;

  for (int i = 0; i < game.num_players(); ++i) {
    if (correlated_regret(game, dist, i) > 1e-8) {
      throw std::runtime_error("correlated_eq_lp: result violates equilibrium constraints");
    }
  }
  return dist;
}

std::vector<int> sample_pure(const MixedProfile& profile, Rng& rng) {
  std::vector<int> s(profile.probs.size());
  for (std::size_t i = 0; i < profile.probs.size(); ++i) {
    const auto& p = profile.probs[i];
    for (double v : p) {
      if (v < 0.0) throw std::invalid_argument("sample_pure: negative probability mass");
    }
    double u = rng.next_double();
    double acc = 0.0;
    int pick = static_cast<int>(p.size()) - 1;
    for (std::size_t t = 0; t < p.size(); ++t) {
      acc += p[t];
      if (u < acc) {
        pick = static_cast<int>(t);
        break;
      }
    }
    s[i] = pick;
  }
  return s;
}

std::vector<int> sample_pure(const MixedProfile& profile, std::uint64_t seed) {
  Rng rng(seed);
  return sample_pure(profile, rng);
}

}  // namespace qge
