#pragma once

#include <cstdint>
#include <vector>

#include "qge/density.hpp"
#include "qge/game.hpp"

namespace qge {

// mu_i(rho) = sum_s rho_ss u_i(s)
double quantum_utility(const Game& game, const DensityMatrix& rho, int player);
double quantum_utility(const Game& game, const PureState& psi, int player);

// Player i's best-deviation problem reduced to their local space.
// For each local strategy t, ops[t] = sum_{s_{-i}} u_i(t, s_{-i}) R_{s_{-i}}
// with R_{s_{-i}} = (I_i (x) <s_{-i}|) rho (I_i (x) |s_{-i}>).
// Measuring any deviated state in the strategy basis is worth
// sum_t Tr[E_t ops[t]] for the POVM E induced by the deviation, and every
// POVM is induced by some channel, so the deviation optimum is the POVM
// optimum. The identity POVM recovers mu_i(rho).
struct DeviationEnsemble {
  int player = 0;
  std::vector<CMat> ops;

  int local_dim() const { return static_cast<int>(ops.front().rows()); }
};

DeviationEnsemble deviation_ensemble(const Game& game, const DensityMatrix& rho, int player);

struct Povm {
  std::vector<CMat> effects;

  void validate() const;  // PSD effects summing to I
};

struct DeviationCertificate {
  double primal_value = 0.0;  // achieved by the POVM below
  double dual_value = 0.0;    // Tr Y for the feasible dominating Y
  Povm povm;
  CMat dual_matrix;           // Y with Y - ops[t] PSD for all t
  int iterations = 0;

  double gap() const { return dual_value - primal_value; }
};

enum class DeviationMethod {
  kAuto,          // closed form for 2 local strategies, barrier otherwise
  kClosedForm2,   // require local_dim == 2
  kBarrier,       // force the barrier solver at any dimension
};

// Closed form for two effects: value = Tr A_1 + sum of positive
// eigenvalues of A_0 - A_1; optimal POVM projects onto the positive
// eigenspace. Exact primal/dual pair (gap at rounding level).
DeviationCertificate closed_form_two_outcome(const DeviationEnsemble& ensemble);

// Log-barrier Newton solve of  min Tr Y  s.t.  Y >= A_t for all t,
// with the POVM extracted from the final barrier point
// (E_t proportional to (Y - A_t)^{-1}). gap_target is the certified
// absolute duality gap to reach.
DeviationCertificate barrier_deviation(const DeviationEnsemble& ensemble,
                                       double gap_target = 1e-8,
                                       int max_newton_steps = 20000);

// Best value of sum_s <s| Phi_i(rho) |s> u_i(s) over local channels,
// certified by a primal POVM / dual matrix pair. local_dim <= 6.
DeviationCertificate best_quantum_deviation(const Game& game, const DensityMatrix& rho,
                                            int player,
                                            DeviationMethod method = DeviationMethod::kAuto,
                                            double gap_target = 1e-8);

// best deviation value minus mu_i, clamped at zero
double quantum_regret(const Game& game, const DensityMatrix& rho, int player,
                      DeviationMethod method = DeviationMethod::kAuto);

// true iff every player's quantum regret is <= eps
bool is_quantum_correlated_eq(const Game& game, const DensityMatrix& rho, double eps = 1e-6);

// additionally requires rho within kProductState of its marginal product
bool is_quantum_nash(const Game& game, const DensityMatrix& rho, double eps = 1e-6,
                     double product_tol = tol::kProductState);

// Lower-bound oracle for the certificate: best utility over the identity,
// every swap channel, and `trials` random unitary and random Kraus
// channels for the player.
double random_channel_search(const Game& game, const DensityMatrix& rho, int player,
                             int trials, std::uint64_t seed);

}  // namespace qge
