#include <gtest/gtest.h>

#include <cmath>

#include "germscan/levenberg_marquardt.hpp"

using namespace germscan;

TEST(LevenbergMarquardt, RosenbrockResiduals) {
  ResidualFunction f = [](const Eigen::VectorXd& x, Eigen::VectorXd& r, Eigen::MatrixXd* jac) {
    r.resize(2);
    r << 10.0 * (x[1] - x[0] * x[0]), 1.0 - x[0];
    if (jac) {
      jac->resize(2, 2);
      *jac << -20.0 * x[0], 10.0, -1.0, 0.0;
    }
  };
  Eigen::VectorXd x0(2);
  x0 << -1.2, 1.0;
  const auto res = levenberg_marquardt(f, x0);
  EXPECT_TRUE(res.converged);
  EXPECT_NEAR(res.x[0], 1.0, 1e-10);
  EXPECT_NEAR(res.x[1], 1.0, 1e-10);
}

TEST(LevenbergMarquardt, UnderdeterminedSystemReachesZero) {
  // One equation x^2 + y^2 + z^2 = 1 in three unknowns.
  ResidualFunction f = [](const Eigen::VectorXd& x, Eigen::VectorXd& r, Eigen::MatrixXd* jac) {
    r.resize(1);
    r[0] = x.squaredNorm() - 1.0;
    if (jac) *jac = 2.0 * x.transpose();
  };
  Eigen::VectorXd x0(3);
  x0 << 0.3, -0.2, 0.9;
  const auto res = levenberg_marquardt(f, x0);
  EXPECT_TRUE(res.converged);
  EXPECT_NEAR(res.x.norm(), 1.0, 1e-14);
}

TEST(LevenbergMarquardt, InconsistentSystemStopsAtLeastSquares) {
  // x = 0 and x = 1 together: best value 1/2, residual never below 1/2.
  ResidualFunction f = [](const Eigen::VectorXd& x, Eigen::VectorXd& r, Eigen::MatrixXd* jac) {
    r.resize(2);
    r << x[0], x[0] - 1.0;
    if (jac) {
      jac->resize(2, 1);
      *jac << 1.0, 1.0;
    }
  };
  const auto res = levenberg_marquardt(f, Eigen::VectorXd::Constant(1, 5.0));
  EXPECT_FALSE(res.converged);
  EXPECT_NEAR(res.x[0], 0.5, 1e-8);
  EXPECT_NEAR(res.residuals.lpNorm<Eigen::Infinity>(), 0.5, 1e-8);
}

TEST(LevenbergMarquardt, PolishHandlesDoubleRoot) {
  // x^2 = 0 has a singular root; damped steps alone converge slowly.
  ResidualFunction f = [](const Eigen::VectorXd& x, Eigen::VectorXd& r, Eigen::MatrixXd* jac) {
    r.resize(1);
    r[0] = x[0] * x[0];
    if (jac) {
      jac->resize(1, 1);
      (*jac)(0, 0) = 2.0 * x[0];
    }
  };
  LevenbergMarquardtOptions opt;
  opt.max_iters = 5;
  const auto res = levenberg_marquardt(f, Eigen::VectorXd::Constant(1, 1.0), opt);
  EXPECT_LE(std::abs(res.residuals[0]), 1e-15);
}

TEST(LevenbergMarquardt, Deterministic) {
  ResidualFunction f = [](const Eigen::VectorXd& x, Eigen::VectorXd& r, Eigen::MatrixXd* jac) {
    r.resize(2);
    r << std::sin(x[0]) + x[1] * x[1] - 0.3, x[0] * x[1] - 0.1;
    if (jac) {
      jac->resize(2, 2);
      *jac << std::cos(x[0]), 2.0 * x[1], x[1], x[0];
    }
  };
  Eigen::VectorXd x0(2);
  x0 << 1.0, 1.0;
  const auto a = levenberg_marquardt(f, x0), b = levenberg_marquardt(f, x0);
  EXPECT_EQ(a.x, b.x);
  EXPECT_EQ(a.iterations, b.iterations);
}
