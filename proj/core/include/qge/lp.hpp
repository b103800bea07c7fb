#pragma once

#include <Eigen/Dense>

namespace qge {

struct LpResult {
  Eigen::VectorXd x;       // primal solution
  double objective = 0.0;  // c.dot(x)
  int iterations = 0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double complementarity = 0.0;
};

// Solves  min c'x  s.t.  Ax = b, x >= 0  by a dense Mehrotra
// predictor-corrector interior-point method. A must have full row rank
// (rows with a dedicated slack column are always fine). Throws
// std::runtime_error with the iteration count on non-convergence.
//
// With multiple optima the central path converges to the analytic center
// of the optimal face, so symmetric inputs yield the symmetric solution
// rather than an arbitrary vertex.
LpResult solve_lp(const Eigen::VectorXd& c, const Eigen::MatrixXd& A,
                  const Eigen::VectorXd& b, int max_iterations = 200,
                  double tolerance = 1e-10);

}  // namespace qge
