#pragma once

#include <cstdint>
#include <vector>

#include "qge/game.hpp"

namespace qge {

struct Equilibrium {
  MixedProfile profile;
  double max_regret = 0.0;  // max over players of nash_regret
};

struct EquilibriumSet {
  std::vector<Equilibrium> equilibria;

  bool empty() const { return equilibria.empty(); }
  // first element in the deterministic enumeration order (support size,
  // then support bitmasks ascending); used as the fixed sampling target
  const MixedProfile& first() const;
};

// Exact Nash equilibria of a bimatrix game by support enumeration.
// Candidate support pairs of equal size are solved through their
// indifference systems; rank-deficient systems are skipped. Requires
// 2 players and at most 6 strategies each.
EquilibriumSet support_enumeration_bimatrix(const Game& game);

// Correlated equilibrium maximizing objective . p over the constraint
// polytope, via the in-repo interior-point LP. |S| <= 64. With several
// optima the analytic center of the optimal face is returned.
JointDistribution correlated_eq_lp(const Game& game, const std::vector<double>& objective);

// Joint pure strategy with each coordinate drawn independently from the
// profile's marginal; deterministic in the seed.
std::vector<int> sample_pure(const MixedProfile& profile, std::uint64_t seed);

class Rng;
// Stream variant used by the sampling oracle.
std::vector<int> sample_pure(const MixedProfile& profile, Rng& rng);

}  // namespace qge
