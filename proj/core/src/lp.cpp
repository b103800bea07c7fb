#include "qge/lp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>

namespace qge {

namespace {

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3e", v);
  return buf;
}

// longest step alpha in [0,1] keeping v + alpha*dv >= (1-fraction)*v
double step_to_boundary(const Eigen::VectorXd& v, const Eigen::VectorXd& dv,
                        double fraction) {
  double alpha = 1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (dv[i] < 0.0) alpha = std::min(alpha, -fraction * v[i] / dv[i]);
  }
  return alpha;
}

struct Mode {
  double boundary_fraction;
  double sigma_floor;
  bool centrality_guard;
  // one common step for x, lambda and s: complementarity then provably
  // cannot outrun the feasibility residuals (both shrink by 1 - alpha)
  bool single_step;
};

// Project a nearly-optimal iterate exactly onto {Ax = b} over its numerical
// support. The interior-point endgame separates coordinates cleanly
// (x_i either O(1) or ~mu), so the least-change projection on the support
// closes the primal residual without leaving the optimal face.
bool polish_onto_support(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                         Eigen::VectorXd& x) {
  const Eigen::Index n = x.size();
  double xmax = x.maxCoeff();
  if (!(xmax > 0.0)) return false;
  std::vector<Eigen::Index> support;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (x[i] > 1e-7 * xmax) support.push_back(i);
  }
  if (support.empty()) return false;

  Eigen::MatrixXd AB(A.rows(), static_cast<Eigen::Index>(support.size()));
  Eigen::VectorXd xB(static_cast<Eigen::Index>(support.size()));
  for (std::size_t j = 0; j < support.size(); ++j) {
    AB.col(static_cast<Eigen::Index>(j)) = A.col(support[j]);
    xB(static_cast<Eigen::Index>(j)) = x(support[j]);
  }
  Eigen::VectorXd residual = b - AB * xB;
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(AB);
  Eigen::VectorXd correction = cod.solve(residual);
  xB += correction;
  if (xB.minCoeff() < -1e-12) return false;

  Eigen::VectorXd polished = Eigen::VectorXd::Zero(n);
  for (std::size_t j = 0; j < support.size(); ++j) {
    polished(support[j]) = std::max(0.0, xB(static_cast<Eigen::Index>(j)));
  }
  if ((A * polished - b).lpNorm<Eigen::Infinity>() >
      1e-11 * std::max(1.0, b.lpNorm<Eigen::Infinity>())) {
    return false;
  }
  x = polished;
  return true;
}

LpResult solve_lp_once(const Eigen::VectorXd& c, const Eigen::MatrixXd& A,
                       const Eigen::VectorXd& b, int max_iterations, double tolerance,
                       const Mode& mode) {
  const Eigen::Index n = c.size();

  // strictly interior start; the least-squares variant is faster but can
  // start badly off-center on degenerate polytopes
  Eigen::VectorXd x = Eigen::VectorXd::Ones(n);
  Eigen::VectorXd s = Eigen::VectorXd::Ones(n);
  Eigen::VectorXd lambda = Eigen::VectorXd::Zero(A.rows());

  const double scale = std::max({1.0, b.lpNorm<Eigen::Infinity>(), c.lpNorm<Eigen::Infinity>()});

  LpResult out;
  double best_score = std::numeric_limits<double>::infinity();
  int best_iter = 0;

  for (int iter = 1; iter <= max_iterations; ++iter) {
    Eigen::VectorXd rp = b - A * x;
    Eigen::VectorXd rd = c - A.transpose() * lambda - s;
    double mu = x.dot(s) / static_cast<double>(n);

    out.iterations = iter;
    out.primal_residual = rp.lpNorm<Eigen::Infinity>();
    out.dual_residual = rd.lpNorm<Eigen::Infinity>();
    out.complementarity = mu;
    if (!std::isfinite(mu) || !std::isfinite(out.primal_residual) ||
        !std::isfinite(out.dual_residual)) {
      throw std::runtime_error("solve_lp: diverged at iteration " + std::to_string(iter));
    }
    // converged, or the path bottomed out against the floating-point floor
    // while the residuals are already far below any feasibility bar we use
    bool converged = out.primal_residual < tolerance * scale &&
                     out.dual_residual < tolerance * scale && mu < tolerance * scale;
    bool floored = mu < 1e-15 * scale && out.primal_residual < 1e-9 * scale &&
                   out.dual_residual < 1e-9 * scale;
    if (converged || floored) {
      out.x = x;
      out.objective = c.dot(x);
      return out;
    }

    double score = std::max({out.primal_residual, out.dual_residual, mu});
    if (score < 0.5 * best_score) {
      best_score = score;
      best_iter = iter;
    }
    if (iter - best_iter > 25 || mu < 1e-17 * scale) {
      // progress has bottomed out; accept if the point clears the
      // feasibility bar the callers rely on, possibly after the support
      // polish, otherwise report the stall
      double accept_bar = std::max(10.0 * tolerance, 1e-9) * scale;
      bool dual_ok = out.dual_residual < accept_bar && mu < accept_bar;
      if (dual_ok && out.primal_residual >= accept_bar && out.primal_residual < 1e-4 &&
          polish_onto_support(A, b, x)) {
        out.primal_residual = (b - A * x).lpNorm<Eigen::Infinity>();
      }
      if (out.primal_residual < accept_bar && dual_ok) {
        out.x = x;
        out.objective = c.dot(x);
        return out;
      }
      throw std::runtime_error("solve_lp: stalled at iteration " + std::to_string(iter) +
                               " (residuals " + sci(out.primal_residual) + ", " +
                               sci(out.dual_residual) + ", mu " + sci(mu) + ")");
    }

    Eigen::VectorXd d = x.cwiseQuotient(s);  // X S^{-1}
    Eigen::MatrixXd M = A * d.asDiagonal() * A.transpose();
    M.diagonal().array() += 1e-13 * (1.0 + M.diagonal().maxCoeff());
    Eigen::LLT<Eigen::MatrixXd> llt(M);
    if (llt.info() != Eigen::Success) {
      throw std::runtime_error("solve_lp: normal equations not positive definite at iteration " +
                               std::to_string(iter));
    }
    // one round of iterative refinement keeps the direction usable when the
    // endgame scaling makes M badly conditioned
    auto refined_solve = [&](const Eigen::VectorXd& rhs) {
      Eigen::VectorXd sol = llt.solve(rhs);
      sol += llt.solve(rhs - M * sol);
      return sol;
    };

    // affine-scaling (predictor) direction
    Eigen::VectorXd rc_aff = -x.cwiseProduct(s);
    Eigen::VectorXd rhs = rp + A * (d.cwiseProduct(rd) - rc_aff.cwiseQuotient(s));
    Eigen::VectorXd dlam_aff = refined_solve(rhs);
    Eigen::VectorXd ds_aff = rd - A.transpose() * dlam_aff;
    Eigen::VectorXd dx_aff = (rc_aff - x.cwiseProduct(ds_aff)).cwiseQuotient(s);

    double ap_aff = step_to_boundary(x, dx_aff, 1.0);
    double ad_aff = step_to_boundary(s, ds_aff, 1.0);
    double mu_aff = (x + ap_aff * dx_aff).dot(s + ad_aff * ds_aff) / static_cast<double>(n);
    double sigma = std::clamp(std::pow(mu_aff / mu, 3), mode.sigma_floor, 1.0);

    // corrector
    Eigen::VectorXd rc =
        sigma * mu * Eigen::VectorXd::Ones(n) - x.cwiseProduct(s) - dx_aff.cwiseProduct(ds_aff);
    rhs = rp + A * (d.cwiseProduct(rd) - rc.cwiseQuotient(s));
    Eigen::VectorXd dlam = refined_solve(rhs);
    Eigen::VectorXd dstep = rd - A.transpose() * dlam;
    Eigen::VectorXd dxstep = (rc - x.cwiseProduct(dstep)).cwiseQuotient(s);

    double ap = std::min(1.0, mode.boundary_fraction * step_to_boundary(x, dxstep, 1.0));
    double ad = std::min(1.0, mode.boundary_fraction * step_to_boundary(s, dstep, 1.0));
    if (mode.single_step) ap = ad = std::min(ap, ad);

    if (mode.centrality_guard) {
      // keep the iterate near the central path: min_i x_i s_i >= gamma * mu
      for (int shrink = 0; shrink < 40; ++shrink) {
        Eigen::VectorXd xn = x + ap * dxstep;
        Eigen::VectorXd sn = s + ad * dstep;
        double mun = xn.dot(sn) / static_cast<double>(n);
        if (mun > 0.0 && (xn.cwiseProduct(sn).minCoeff() >= 1e-4 * mun || mun >= mu)) break;
        ap *= 0.7;
        ad *= 0.7;
      }
    }

    x += ap * dxstep;
    lambda += ad * dlam;
    s += ad * dstep;
  }
  throw std::runtime_error("solve_lp: no convergence after " +
                           std::to_string(max_iterations) + " iterations (residuals " +
                           sci(out.primal_residual) + ", " + sci(out.dual_residual) +
                           ", mu " + sci(out.complementarity) + ")");
}

}  // namespace

LpResult solve_lp(const Eigen::VectorXd& c, const Eigen::MatrixXd& A,
                  const Eigen::VectorXd& b, int max_iterations, double tolerance) {
  const Eigen::Index n = c.size();
  const Eigen::Index m = A.rows();
  if (A.cols() != n || b.size() != m) throw std::invalid_argument("solve_lp: shape mismatch");

  try {
    return solve_lp_once(c, A, b, max_iterations, tolerance,
                         {/*boundary_fraction=*/0.99, /*sigma_floor=*/1e-8,
                          /*centrality_guard=*/false, /*single_step=*/false});
  } catch (const std::runtime_error&) {
    // conservative retry: short common steps, heavy centering, guarded
    // centrality
    return solve_lp_once(c, A, b, 4 * max_iterations, tolerance,
                         {/*boundary_fraction=*/0.9, /*sigma_floor=*/0.3,
                          /*centrality_guard=*/true, /*single_step=*/true});
  }
}

}  // namespace qge
