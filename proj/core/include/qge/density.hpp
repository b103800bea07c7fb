#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

#include "qge/game.hpp"
#include "qge/rng.hpp"
#include "qge/tolerances.hpp"

namespace qge {

using Cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

// Kronecker product in the shared basis convention: first factor slowest.
CMat kron(const CMat& a, const CMat& b);

// I_{pre} (x) op (x) I_{post} for a local operator of `player` under `dims`.
CMat embed_local(const std::vector<int>& dims, int player, const CMat& op);

// Unit-norm state vector over the joint strategy basis.
class PureState {
 public:
  PureState(std::vector<int> dims, CVec amplitudes);

  const std::vector<int>& dims() const { return dims_; }
  const CVec& amplitudes() const { return amps_; }
  std::size_t dim() const { return static_cast<std::size_t>(amps_.size()); }

 private:
  std::vector<int> dims_;
  CVec amps_;
};

// Hermitian, PSD (up to tolerance) trace-one matrix with a per-player
// tensor factorization. Invariants are enforced at construction.
class DensityMatrix {
 public:
  DensityMatrix(std::vector<int> dims, CMat entries);
  explicit DensityMatrix(const PureState& psi);

  const std::vector<int>& dims() const { return dims_; }
  const CMat& entries() const { return m_; }
  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  int num_players() const { return static_cast<int>(dims_.size()); }

  double min_eigenvalue() const;

 private:
  std::vector<int> dims_;
  CMat m_;
};

// One player's local channel in Kraus form; sum A^dagger A = I enforced.
class KrausChannel {
 public:
  KrausChannel(int player, std::vector<CMat> operators);

  int player() const { return player_; }
  const std::vector<CMat>& operators() const { return ops_; }
  int local_dim() const { return static_cast<int>(ops_.front().rows()); }

  static KrausChannel identity(int player, int local_dim);
  static KrausChannel unitary(int player, const CMat& u);

 private:
  int player_;
  std::vector<CMat> ops_;
};

// p |-> sum_s p(s) |s><s|
DensityMatrix lift_diagonal(const JointDistribution& p, const std::vector<int>& dims);

// p |-> sum_s sqrt(p(s)) |s>
PureState lift_pure(const JointDistribution& p, const std::vector<int>& dims);

// D^{1/2} C D^{1/2} for a given unit-diagonal PSD correlation matrix C;
// the diagonal equals p exactly.
DensityMatrix correlation_lift(const JointDistribution& p, const std::vector<int>& dims,
                               const CMat& correlation);

// correlation_lift with C the normalized Gram matrix of seeded random
// unit vectors: a generic state among all states with diagonal p.
DensityMatrix random_lift(const JointDistribution& p, const std::vector<int>& dims,
                          std::uint64_t seed);

// rho |-> diag(rho); eigenvalue dust in [kPsd, 0) is clipped and the
// result renormalized.
JointDistribution induced_distribution(const DensityMatrix& rho);

// sum_j (A_j (x) I_{-i}) rho (A_j^dagger (x) I_{-i})
DensityMatrix apply_channel(const DensityMatrix& rho, const KrausChannel& channel);

// Kraus channel {P_t : t != from} + {SWAP(from,to) P_from} on player i's
// local space: reroutes the recommendation `from` to `to` and leaves all
// other recommendations untouched.
KrausChannel swap_channel(const std::vector<int>& dims, int player, int from, int to);

// Partial trace onto player i's local space.
CMat marginal(const DensityMatrix& rho, int player);

// Frobenius distance between rho and the tensor product of its marginals;
// ~0 exactly for product states.
double product_distance(const DensityMatrix& rho);

// Generic full-rank random state (normalized G G^dagger), for sweeps.
DensityMatrix random_density(const std::vector<int>& dims, std::uint64_t seed);

// Haar-ish random local unitary channel.
KrausChannel random_unitary_channel(int player, int local_dim, Rng& rng);

// Random rank-r Kraus channel (Gaussian operators, renormalized).
KrausChannel random_kraus_channel(int player, int local_dim, int rank, Rng& rng);

}  // namespace qge
