#include "qge/game.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace qge {

Game::Game(std::vector<int> strategy_counts,
           std::vector<std::vector<double>> utilities, bool positively_normalized)
    : counts_(std::move(strategy_counts)),
      utils_(std::move(utilities)),
      normalized_(positively_normalized) {
  if (counts_.empty()) throw std::invalid_argument("game: no players");
  for (int m : counts_) {
    if (m <= 0) throw std::invalid_argument("game: nonpositive strategy count");
    joint_ *= static_cast<std::size_t>(m);
  }
  strides_.assign(counts_.size(), 1);
  for (int i = static_cast<int>(counts_.size()) - 2; i >= 0; --i) {
    strides_[i] = strides_[i + 1] * static_cast<std::size_t>(counts_[i + 1]);
  }
  if (utils_.size() != counts_.size()) {
    throw std::invalid_argument("game: one utility tensor per player required");
  }
  for (const auto& u : utils_) {
    if (u.size() != joint_) {
      throw std::invalid_argument("game: utility tensor size != joint strategy count");
    }
    for (double v : u) {
      if (!std::isfinite(v)) throw std::invalid_argument("game: non-finite utility");
      if (normalized_ && (v < 0.0 || v > 1.0)) {
        throw std::invalid_argument(
            "game: positively_normalized requires utilities in [0,1]");
      }
    }
  }
}

std::size_t Game::joint_index(const std::vector<int>& s) const {
  if (s.size() != counts_.size()) {
    throw std::invalid_argument("joint_index: wrong strategy vector length");
  }
  std::size_t flat = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] < 0 || s[i] >= counts_[i]) {
      throw std::invalid_argument("joint_index: strategy out of range");
    }
    flat += static_cast<std::size_t>(s[i]) * strides_[i];
  }
  return flat;
}

std::vector<int> Game::unpack(std::size_t flat) const {
  std::vector<int> s(counts_.size());
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    s[i] = static_cast<int>((flat / strides_[i]) % static_cast<std::size_t>(counts_[i]));
  }
  return s;
}

void Game::require_player(int player) const {
  if (player < 0 || player >= num_players()) {
    throw std::invalid_argument("invalid player index");
  }
}

Game Game::normalized_to_unit() const {
  std::vector<std::vector<double>> rescaled = utils_;
  for (auto& u : rescaled) {
    auto [lo_it, hi_it] = std::minmax_element(u.begin(), u.end());
    const double lo = *lo_it;
    const double span = *hi_it - lo;
    for (double& v : u) v = span > 0.0 ? (v - lo) / span : 0.0;
  }
  return Game(counts_, std::move(rescaled), true);
}

void MixedProfile::validate(const Game& game) const {
  if (static_cast<int>(probs.size()) != game.num_players()) {
    throw std::invalid_argument("profile: player count mismatch");
  }
  for (int i = 0; i < game.num_players(); ++i) {
    const auto& pi = probs[i];
    if (static_cast<int>(pi.size()) != game.strategy_count(i)) {
      throw std::invalid_argument("profile: strategy count mismatch");
    }
    double sum = 0.0;
    for (double v : pi) {
      if (v < 0.0) throw std::invalid_argument("profile: negative probability");
      sum += v;
    }
    if (std::abs(sum - 1.0) > tol::kProbSum) {
      throw std::invalid_argument("profile: probabilities do not sum to 1");
    }
  }
}

void JointDistribution::validate_dims(std::size_t joint_count) const {
  if (p.size() != joint_count) {
    throw std::invalid_argument("distribution: dimension mismatch");
  }
  double sum = 0.0;
  for (double v : p) {
    if (v < 0.0) throw std::invalid_argument("distribution: negative probability");
    sum += v;
  }
  if (std::abs(sum - 1.0) > tol::kProbSum) {
    throw std::invalid_argument("distribution: probabilities do not sum to 1");
  }
}

void JointDistribution::validate(const Game& game) const {
  validate_dims(game.joint_count());
}

JointDistribution to_joint(const Game& game, const MixedProfile& profile) {
  profile.validate(game);
  JointDistribution joint;
  joint.p.assign(game.joint_count(), 1.0);
  for (std::size_t flat = 0; flat < game.joint_count(); ++flat) {
    auto s = game.unpack(flat);
    for (int i = 0; i < game.num_players(); ++i) {
      joint.p[flat] *= profile.probs[i][static_cast<std::size_t>(s[i])];
    }
  }
  return joint;
}

double expected_utility(const Game& game, const JointDistribution& p, int player) {
  game.require_player(player);
  p.validate(game);
  double total = 0.0;
  for (std::size_t s = 0; s < game.joint_count(); ++s) {
    total += p.p[s] * game.utility(player, s);
  }
  return total;
}

std::vector<double> unilateral_payoffs(const Game& game, const MixedProfile& profile,
                                       int player) {
  game.require_player(player);
  profile.validate(game);
  const int m = game.strategy_count(player);
  std::vector<double> v(static_cast<std::size_t>(m), 0.0);
  for (std::size_t flat = 0; flat < game.joint_count(); ++flat) {
    auto s = game.unpack(flat);
    double opponent_mass = 1.0;
    for (int j = 0; j < game.num_players(); ++j) {
      if (j != player) opponent_mass *= profile.probs[j][static_cast<std::size_t>(s[j])];
    }
    v[static_cast<std::size_t>(s[player])] += opponent_mass * game.utility(player, flat);
  }
  return v;
}

namespace {

double deficit_impl(const Game& game, const MixedProfile& profile, int player,
                    double support_tol) {
  auto v = unilateral_payoffs(game, profile, player);
  double best = *std::max_element(v.begin(), v.end());
  bool any_support = false;
  double worst_supported = 0.0;
  for (std::size_t t = 0; t < v.size(); ++t) {
    if (profile.probs[player][t] > support_tol) {
      worst_supported = any_support ? std::min(worst_supported, v[t]) : v[t];
      any_support = true;
    }
  }
  if (!any_support) {
    throw std::invalid_argument("nash_regret: profile has empty numerical support");
  }
  return best - worst_supported;
}

}  // namespace

double nash_deficit(const Game& game, const MixedProfile& profile, int player,
                    double support_tol) {
  return deficit_impl(game, profile, player, support_tol);
}

double nash_regret(const Game& game, const MixedProfile& profile, int player,
                   double support_tol) {
  return std::max(0.0, deficit_impl(game, profile, player, support_tol));
}

double correlated_deviation_gain(const Game& game, const JointDistribution& p,
                                 int player, int from, int to) {
  game.require_player(player);
  p.validate(game);
  const int m = game.strategy_count(player);
  if (from < 0 || from >= m || to < 0 || to >= m) {
    throw std::invalid_argument("correlated_deviation_gain: strategy out of range");
  }
  const std::size_t stride = game.stride(player);
  double gain = 0.0;
  for (std::size_t flat = 0; flat < game.joint_count(); ++flat) {
    auto s = game.unpack(flat);
    if (s[player] != from) continue;
    std::size_t deviated =
        flat + (static_cast<std::size_t>(to) - static_cast<std::size_t>(from)) * stride;
    gain += p.p[flat] * (game.utility(player, deviated) - game.utility(player, flat));
  }
  return gain;
}

double correlated_deficit(const Game& game, const JointDistribution& p, int player) {
  game.require_player(player);
  p.validate(game);
  const int m = game.strategy_count(player);
  double worst = -std::numeric_limits<double>::infinity();
  for (int from = 0; from < m; ++from) {
    for (int to = 0; to < m; ++to) {
      if (to == from) continue;
      worst = std::max(worst, correlated_deviation_gain(game, p, player, from, to));
    }
  }
  if (m == 1) worst = 0.0;
  return worst;
}

double correlated_regret(const Game& game, const JointDistribution& p, int player) {
  return std::max(0.0, correlated_deficit(game, p, player));
}

}  // namespace qge
