#include "qge/deviation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qge {

namespace {

void check_dims(const Game& game, const DensityMatrix& rho, int player) {
  game.require_player(player);
  if (rho.dims() != game.strategy_counts()) {
    throw std::invalid_argument("state dims do not match game strategy counts");
  }
}

CMat hermitian_part(const CMat& m) { return (m + m.adjoint()) / 2.0; }

}  // namespace

double quantum_utility(const Game& game, const DensityMatrix& rho, int player) {
  check_dims(game, rho, player);
  double total = 0.0;
  for (std::size_t s = 0; s < rho.dim(); ++s) {
    total += rho.entries()(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(s)).real() *
             game.utility(player, s);
  }
  return total;
}

double quantum_utility(const Game& game, const PureState& psi, int player) {
  game.require_player(player);
  if (psi.dims() != game.strategy_counts()) {
    throw std::invalid_argument("state dims do not match game strategy counts");
  }
  double total = 0.0;
  for (std::size_t s = 0; s < psi.dim(); ++s) {
    total += std::norm(psi.amplitudes()(static_cast<Eigen::Index>(s))) *
             game.utility(player, s);
  }
  return total;
}

DeviationEnsemble deviation_ensemble(const Game& game, const DensityMatrix& rho, int player) {
  check_dims(game, rho, player);
  const auto& dims = rho.dims();
  const int m = dims[static_cast<std::size_t>(player)];
  std::size_t pre = 1, post = 1;
  for (int j = 0; j < player; ++j) pre *= static_cast<std::size_t>(dims[static_cast<std::size_t>(j)]);
  for (std::size_t j = static_cast<std::size_t>(player) + 1; j < dims.size(); ++j) {
    post *= static_cast<std::size_t>(dims[j]);
  }

  DeviationEnsemble ens;
  ens.player = player;
  ens.ops.assign(static_cast<std::size_t>(m), CMat::Zero(m, m));

  double r_trace = 0.0;
  std::vector<int> s(dims.size());
  // iterate over opponents' joint strategies (pre, post split around player i)
  for (std::size_t x = 0; x < pre; ++x) {
    for (std::size_t y = 0; y < post; ++y) {
      CMat r_block(m, m);
      for (int a = 0; a < m; ++a) {
        for (int b = 0; b < m; ++b) {
          std::size_t row = (x * static_cast<std::size_t>(m) + static_cast<std::size_t>(a)) * post + y;
          std::size_t col = (x * static_cast<std::size_t>(m) + static_cast<std::size_t>(b)) * post + y;
          r_block(a, b) = rho.entries()(static_cast<Eigen::Index>(row),
                                        static_cast<Eigen::Index>(col));
        }
      }
      r_trace += r_block.trace().real();
      // utility of (t, s_{-i}) read off the flat index with s_i = t
      for (int t = 0; t < m; ++t) {
        std::size_t flat = (x * static_cast<std::size_t>(m) + static_cast<std::size_t>(t)) * post + y;
        ens.ops[static_cast<std::size_t>(t)] += game.utility(player, flat) * r_block;
      }
    }
  }
  if (std::abs(r_trace - 1.0) > tol::kTrace) {
    throw std::invalid_argument("deviation_ensemble: opponent blocks do not sum to trace 1");
  }
  for (auto& a : ens.ops) {
    if ((a - a.adjoint()).cwiseAbs().maxCoeff() > tol::kHermitian * 10) {
      throw std::invalid_argument("deviation_ensemble: non-Hermitian payoff operator");
    }
    a = hermitian_part(a);
  }
  return ens;
}

void Povm::validate() const {
  if (effects.empty()) throw std::invalid_argument("povm: empty");
  const Eigen::Index d = effects.front().rows();
  CMat sum = CMat::Zero(d, d);
  for (const auto& e : effects) {
    Eigen::SelfAdjointEigenSolver<CMat> eig(hermitian_part(e), Eigen::EigenvaluesOnly);
    if (eig.eigenvalues().minCoeff() < tol::kPsd) {
      throw std::invalid_argument("povm: effect not PSD");
    }
    sum += e;
  }
  if ((sum - CMat::Identity(d, d)).cwiseAbs().maxCoeff() > tol::kPovmSum) {
    throw std::invalid_argument("povm: effects do not sum to identity");
  }
}

DeviationCertificate closed_form_two_outcome(const DeviationEnsemble& ensemble) {
  if (ensemble.ops.size() != 2) {
    throw std::invalid_argument("closed_form_two_outcome: exactly two effects required");
  }
  const CMat& a0 = ensemble.ops[0];
  const CMat& a1 = ensemble.ops[1];
  Eigen::SelfAdjointEigenSolver<CMat> eig(a0 - a1);

  const Eigen::Index d = a0.rows();
  CMat e0 = CMat::Zero(d, d);
  CMat positive_part = CMat::Zero(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    double lam = eig.eigenvalues()(j);
    if (lam > 0.0) {
      CMat proj = eig.eigenvectors().col(j) * eig.eigenvectors().col(j).adjoint();
      e0 += proj;
      positive_part += lam * proj;
    }
  }

  DeviationCertificate cert;
  cert.povm.effects = {e0, CMat::Identity(d, d) - e0};
  cert.dual_matrix = hermitian_part(a1 + positive_part);
  cert.primal_value = ((e0 * a0).trace() + ((CMat::Identity(d, d) - e0) * a1).trace()).real();
  cert.dual_value = cert.dual_matrix.trace().real();
  if (cert.dual_value < cert.primal_value) cert.dual_value = cert.primal_value;
  cert.iterations = 0;
  return cert;
}

DeviationCertificate barrier_deviation(const DeviationEnsemble& ensemble, double gap_target,
                                       int max_newton_steps) {
  const int k = static_cast<int>(ensemble.ops.size());
  const Eigen::Index d = ensemble.ops.front().rows();
  if (gap_target <= 0.0) throw std::invalid_argument("barrier_deviation: gap_target <= 0");

  // scale to O(1); all values mapped back at the end
  double scale = 1.0;
  for (const auto& a : ensemble.ops) scale = std::max(scale, a.cwiseAbs().maxCoeff());
  std::vector<CMat> a_ops;
  a_ops.reserve(static_cast<std::size_t>(k));
  for (const auto& a : ensemble.ops) a_ops.push_back(a / scale);

  // real orthonormal basis of Hermitian d x d matrices
  std::vector<CMat> basis;
  for (Eigen::Index i = 0; i < d; ++i) {
    CMat b = CMat::Zero(d, d);
    b(i, i) = 1.0;
    basis.push_back(b);
  }
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = i + 1; j < d; ++j) {
      CMat b = CMat::Zero(d, d);
      b(i, j) = inv_sqrt2;
      b(j, i) = inv_sqrt2;
      basis.push_back(b);
      CMat c = CMat::Zero(d, d);
      c(i, j) = Cplx(0.0, inv_sqrt2);
      c(j, i) = Cplx(0.0, -inv_sqrt2);
      basis.push_back(c);
    }
  }
  const int nb = static_cast<int>(basis.size());  // d^2

  double top = -1e300;
  for (const auto& a : a_ops) {
    Eigen::SelfAdjointEigenSolver<CMat> eig(a, Eigen::EigenvaluesOnly);
    top = std::max(top, eig.eigenvalues().maxCoeff());
  }
  CMat y = (top + 1.0) * CMat::Identity(d, d);

  const double barrier_count = static_cast<double>(k) * static_cast<double>(d);
  const double t_final = barrier_count / (gap_target / scale);
  double t = 1.0;
  int newton_steps = 0;
  std::vector<CMat> s_inv(static_cast<std::size_t>(k));

  auto factor_slacks = [&](const CMat& cand) -> bool {
    for (int j = 0; j < k; ++j) {
      CMat s = cand - a_ops[static_cast<std::size_t>(j)];
      Eigen::LLT<CMat> llt(s);
      if (llt.info() != Eigen::Success) return false;
      s_inv[static_cast<std::size_t>(j)] =
          llt.solve(CMat::Identity(d, d));
    }
    return true;
  };
  if (!factor_slacks(y)) throw std::runtime_error("barrier_deviation: infeasible start");

  while (true) {
    // damped Newton on  t*Tr(Y) - sum_j logdet(Y - A_j)
    for (;;) {
      if (++newton_steps > max_newton_steps) {
        throw std::runtime_error("barrier_deviation: no convergence after " +
                                 std::to_string(newton_steps - 1) + " Newton steps (gap ~ " +
                                 std::to_string(scale * barrier_count / t) + ")");
      }
      CMat grad_m = t * CMat::Identity(d, d);
      for (const auto& si : s_inv) grad_m -= si;

      Eigen::VectorXd grad(nb);
      for (int a = 0; a < nb; ++a) {
        grad(a) = (grad_m.adjoint() * basis[static_cast<std::size_t>(a)]).trace().real();
      }
      Eigen::MatrixXd hess = Eigen::MatrixXd::Zero(nb, nb);
      for (int j = 0; j < k; ++j) {
        std::vector<CMat> sb(static_cast<std::size_t>(nb));
        for (int a = 0; a < nb; ++a) {
          sb[static_cast<std::size_t>(a)] =
              s_inv[static_cast<std::size_t>(j)] * basis[static_cast<std::size_t>(a)];
        }
        for (int a = 0; a < nb; ++a) {
          for (int b = a; b < nb; ++b) {
            double v = (sb[static_cast<std::size_t>(a)] * sb[static_cast<std::size_t>(b)])
                           .trace()
                           .real();
            hess(a, b) += v;
            hess(b, a) = hess(a, b);
          }
        }
      }
      hess.diagonal().array() += 1e-14 * hess.diagonal().maxCoeff();
      Eigen::LLT<Eigen::MatrixXd> llt(hess);
      if (llt.info() != Eigen::Success) {
        throw std::runtime_error("barrier_deviation: singular Hessian");
      }
      Eigen::VectorXd step = llt.solve(-grad);
      double decrement2 = -grad.dot(step);
      if (decrement2 < 0.0) decrement2 = 0.0;
      double decrement = std::sqrt(decrement2);

      CMat dy = CMat::Zero(d, d);
      for (int a = 0; a < nb; ++a) dy += step(a) * basis[static_cast<std::size_t>(a)];
      double damping = decrement > 0.25 ? 1.0 / (1.0 + decrement) : 1.0;
      CMat cand = y + damping * dy;
      int backtracks = 0;
      while (!factor_slacks(cand)) {
        damping /= 2.0;
        cand = y + damping * dy;
        if (++backtracks > 60) {
          throw std::runtime_error("barrier_deviation: line search failed");
        }
      }
      // a step below double resolution cannot improve the center further
      bool representable =
          (cand - y).cwiseAbs().maxCoeff() > 4e-16 * y.cwiseAbs().maxCoeff();
      y = cand;
      if (decrement < 1e-7 || !representable) break;
    }
    if (t >= t_final) break;
    t = std::min(t * 10.0, t_final);
  }

  // primal POVM from the barrier point: E_j = (1/t) S_j^{-1}, then a
  // symmetric correction so the effects sum to I exactly
  std::vector<CMat> effects(static_cast<std::size_t>(k));
  CMat total = CMat::Zero(d, d);
  for (int j = 0; j < k; ++j) {
    effects[static_cast<std::size_t>(j)] = hermitian_part(s_inv[static_cast<std::size_t>(j)] / t);
    total += effects[static_cast<std::size_t>(j)];
  }
  Eigen::SelfAdjointEigenSolver<CMat> eig(total);
  CMat correction = eig.eigenvectors() *
                    eig.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                    eig.eigenvectors().adjoint();
  double primal = 0.0;
  for (int j = 0; j < k; ++j) {
    effects[static_cast<std::size_t>(j)] =
        hermitian_part(correction * effects[static_cast<std::size_t>(j)] * correction);
    primal += (effects[static_cast<std::size_t>(j)] * a_ops[static_cast<std::size_t>(j)])
                  .trace()
                  .real();
  }

  DeviationCertificate cert;
  cert.povm.effects = std::move(effects);
  cert.dual_matrix = scale * hermitian_part(y);
  cert.primal_value = scale * primal;
  cert.dual_value = scale * y.trace().real();
  cert.iterations = newton_steps;
  if (cert.dual_value < cert.primal_value) cert.dual_value = cert.primal_value;
  return cert;
}

DeviationCertificate best_quantum_deviation(const Game& game, const DensityMatrix& rho,
                                            int player, DeviationMethod method,
                                            double gap_target) {
  check_dims(game, rho, player);
  const int m = game.strategy_count(player);
  if (m > 6) {
    throw std::invalid_argument("best_quantum_deviation: at most 6 local strategies");
  }
  DeviationEnsemble ens = deviation_ensemble(game, rho, player);
  switch (method) {
    case DeviationMethod::kClosedForm2:
      return closed_form_two_outcome(ens);
    case DeviationMethod::kBarrier:
      return barrier_deviation(ens, gap_target);
    case DeviationMethod::kAuto:
    default:
      return m == 2 ? closed_form_two_outcome(ens) : barrier_deviation(ens, gap_target);
  }
}

double quantum_regret(const Game& game, const DensityMatrix& rho, int player,
                      DeviationMethod method) {
  DeviationCertificate cert = best_quantum_deviation(game, rho, player, method);
  return std::max(0.0, cert.primal_value - quantum_utility(game, rho, player));
}

bool is_quantum_correlated_eq(const Game& game, const DensityMatrix& rho, double eps) {
  for (int i = 0; i < game.num_players(); ++i) {
    if (quantum_regret(game, rho, i) > eps) return false;
  }
  return true;
}

bool is_quantum_nash(const Game& game, const DensityMatrix& rho, double eps,
                     double product_tol) {
  if (product_distance(rho) > product_tol) return false;
  return is_quantum_correlated_eq(game, rho, eps);
}

double random_channel_search(const Game& game, const DensityMatrix& rho, int player,
                             int trials, std::uint64_t seed) {
  check_dims(game, rho, player);
  const int m = game.strategy_count(player);
  double best = quantum_utility(game, rho, player);  // identity channel

  auto consider = [&](const KrausChannel& ch) {
    best = std::max(best, quantum_utility(game, apply_channel(rho, ch), player));
  };

  for (int from = 0; from < m; ++from) {
    for (int to = 0; to < m; ++to) {
      if (to != from) consider(swap_channel(rho.dims(), player, from, to));
    }
  }
  Rng rng(seed);
  for (int trial = 0; trial < trials; ++trial) {
    Rng unitary_rng = rng.fork(2 * static_cast<std::uint64_t>(trial));
    consider(random_unitary_channel(player, m, unitary_rng));
    Rng kraus_rng = rng.fork(2 * static_cast<std::uint64_t>(trial) + 1);
    int rank = 1 + static_cast<int>(kraus_rng.next_below(static_cast<std::uint64_t>(m * m)));
    consider(random_kraus_channel(player, m, rank, kraus_rng));
  }
  return best;
}

}  // namespace qge
