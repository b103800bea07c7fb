#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qge/tolerances.hpp"

namespace qge {

// Finite normal-form game. Utilities are stored as one flat row-major
// tensor per player over joint pure strategies; player 0 is the
// slowest-varying index. This ordering is shared with the tensor-product
// basis of the quantum modules and locked by a conformance test.
class Game {
 public:
  Game(std::vector<int> strategy_counts,
       std::vector<std::vector<double>> utilities,
       bool positively_normalized = false);

  int num_players() const { return static_cast<int>(counts_.size()); }
  int strategy_count(int player) const { return counts_.at(player); }
  const std::vector<int>& strategy_counts() const { return counts_; }
  std::size_t joint_count() const { return joint_; }
  bool positively_normalized() const { return normalized_; }

  // stride of player i in the flat joint index
  std::size_t stride(int player) const { return strides_.at(player); }

  std::size_t joint_index(const std::vector<int>& s) const;
  std::vector<int> unpack(std::size_t flat) const;

  double utility(int player, std::size_t flat) const {
    return utils_[player][flat];
  }
  double utility(int player, const std::vector<int>& s) const {
    return utils_[player][joint_index(s)];
  }
  const std::vector<double>& utility_tensor(int player) const {
    return utils_.at(player);
  }

  void require_player(int player) const;

  // min-max rescale of every player's utilities into [0,1]; explicit
  // opt-in (regret scales with the same affine map)
  Game normalized_to_unit() const;

 private:
  std::vector<int> counts_;
  std::vector<std::size_t> strides_;
  std::size_t joint_ = 1;
  std::vector<std::vector<double>> utils_;
  bool normalized_ = false;
};

// Product distribution: one probability vector per player.
struct MixedProfile {
  std::vector<std::vector<double>> probs;

  int num_players() const { return static_cast<int>(probs.size()); }
  void validate(const Game& game) const;
};

// General distribution over joint pure strategies, flat row-major.
struct JointDistribution {
  std::vector<double> p;

  void validate(const Game& game) const;
  void validate_dims(std::size_t joint_count) const;
};

// Product profile expanded to its induced joint distribution.
JointDistribution to_joint(const Game& game, const MixedProfile& profile);

// E_p[u_i]
double expected_utility(const Game& game, const JointDistribution& p, int player);

// v_i(t) = sum_{s_{-i}} p_{-i}(s_{-i}) u_i(t, s_{-i}) for every t
std::vector<double> unilateral_payoffs(const Game& game, const MixedProfile& profile,
                                       int player);

// Largest unilateral gain over pure deviations from the numerical support,
// clamped at zero. Zero for every player iff the profile is a (numerically)
// exact mixed Nash equilibrium; <= eps characterises eps-approximate ones.
double nash_regret(const Game& game, const MixedProfile& profile, int player,
                   double support_tol = tol::kSupport);

// Signed variant (no clamp), for diagnostics.
double nash_deficit(const Game& game, const MixedProfile& profile, int player,
                    double support_tol = tol::kSupport);

// Largest gain from remapping one recommended strategy, clamped at zero.
// Zero for every player iff p is a correlated equilibrium.
double correlated_regret(const Game& game, const JointDistribution& p, int player);

double correlated_deficit(const Game& game, const JointDistribution& p, int player);

// Gain for one specific remap s_i -> t_i of player i.
double correlated_deviation_gain(const Game& game, const JointDistribution& p,
                                 int player, int from, int to);

}  // namespace qge
