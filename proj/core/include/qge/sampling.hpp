#pragma once

#include <cstdint>
#include <vector>

#include "qge/game.hpp"
#include "qge/rng.hpp"
#include "qge/solve.hpp"

namespace qge {

// Oracle that emits joint pure strategies drawn from one fixed Nash
// equilibrium of a positively normalized bimatrix game. Deterministic in
// (seed, call index), so trial batches can run in any order.
class SampleNashOracle {
 public:
  SampleNashOracle(Game game, MixedProfile hidden, std::uint64_t seed);

  // hidden profile taken as the first support-enumeration equilibrium
  static SampleNashOracle from_game(const Game& game, std::uint64_t seed);

  std::vector<int> draw();
  const Game& game() const { return game_; }
  const MixedProfile& hidden() const { return hidden_; }

 private:
  Game game_;
  MixedProfile hidden_;
  Rng rng_;
  std::uint64_t calls_ = 0;
};

// number of oracle calls used at fidelity constants: ceil(4000 m^2 / eps^2)
std::uint64_t fidelity_sample_count(int m, double eps);

enum class SampleCountMode {
  kFidelity,   // ceil(4000 m^2 / eps^2)
  kPractical,  // sequential stopping on a Hoeffding radius
};

// Per-player empirical frequencies over k oracle draws; each component
// sums to 1 exactly (counts / k).
MixedProfile empirical_profile(SampleNashOracle& oracle, std::uint64_t k);

struct ReductionReport {
  int m = 0;
  double eps = 0.0;
  std::uint64_t k = 0;
  MixedProfile q;
  std::vector<double> l1_distances;  // per player, against the hidden profile
  double regret = 0.0;               // max-player nash_regret of q
  bool l1_within_eps = false;        // both distances <= eps
};

// Full pipeline: fix the equilibrium, draw k samples, report the
// empirical profile, its distances and its regret. The approximation
// guarantee (regret <= 2 eps when both distances are <= eps) rides on
// utilities bounded by 1, so non-normalized games are rejected.
ReductionReport reduce_to_approx_nash(const Game& game, double eps, std::uint64_t seed,
                                      SampleCountMode mode = SampleCountMode::kFidelity);

struct PerturbationStats {
  int trials = 0;
  int violations = 0;              // support-restricted regret above 2 eps + slack
  double max_regret = 0.0;         // worst support-restricted regret observed
  double max_full_regret = 0.0;    // worst plain nash_regret observed (diagnostic)
  int full_regret_violations = 0;  // plain regret above the bound, counted only
                                   // on trials whose q stayed inside p's support
};

// Draw product profiles q with ||q_i - p_i||_1 <= eps around an exact
// equilibrium p and check the 2 eps guarantee on every trial.
//
// The guarantee's derivation bounds deviation gains for recommendations
// inside p's support; a perturbation that moves mass onto a strategy p
// never plays can make that strategy arbitrarily bad without touching the
// bound. The check therefore scores regret over p's support (which equals
// plain nash_regret whenever q's support stays inside p's, in particular
// for every sampled empirical profile and for full-support p).
PerturbationStats verify_perturbation_bound(const Game& game, const MixedProfile& p, double eps,
                                int trials, std::uint64_t seed);

// max_{s'_i} v(s'_i) - min_{s_i in supp(p_i)} v(s_i) on q's payoffs, >= 0
double support_restricted_regret(const Game& game, const MixedProfile& q,
                                 const MixedProfile& support_reference, int player,
                                 double support_tol = tol::kSupport);

// One random product profile within l1 distance eps of p (per player):
// segment toward a uniform-simplex draw, radius scaled by eps.
MixedProfile perturb_within_l1(const MixedProfile& p, double eps, Rng& rng);

}  // namespace qge
