#pragma once

#include <Eigen/Dense>

#include <functional>

namespace germscan {

/// Fills residuals r(x) and, when the pointer is non-null, the Jacobian dr/dx.
using ResidualFunction = std::function<void(const Eigen::VectorXd& x, Eigen::VectorXd& r, Eigen::MatrixXd* jac)>;

struct LevenbergMarquardtOptions {
  int max_iters = 200;
  /// Stop once ||r||_inf drops below this.
  double residual_tol = 1e-15;
  double gradient_tol = 1e-30;
  double step_tol = 1e-16;
  /// Undamped minimum-norm Gauss-Newton steps applied after the damped phase.
  int polish_iters = 60;
};

struct LevenbergMarquardtResult {
  Eigen::VectorXd x;
  Eigen::VectorXd residuals;
  int iterations = 0;
  bool converged = false;
};

/// Nielsen-style damped Gauss-Newton on 0.5 ||r(x)||^2, valid for under- and over-determined
/// systems, followed by minimum-norm Newton polishing steps (with step halving) that are kept only
/// when they reduce ||r||_inf.
LevenbergMarquardtResult levenberg_marquardt(const ResidualFunction& f, Eigen::VectorXd x0,
                                             const LevenbergMarquardtOptions& options = {});

}  // namespace germscan
