#include "germscan/levenberg_marquardt.hpp"

#include <algorithm>
#include <cmath>

namespace germscan {

LevenbergMarquardtResult levenberg_marquardt(const ResidualFunction& f, Eigen::VectorXd x0,
                                             const LevenbergMarquardtOptions& options) {
  LevenbergMarquardtResult out;
  Eigen::VectorXd x = std::move(x0);
  Eigen::VectorXd r;
  Eigen::MatrixXd J;
  f(x, r, &J);
  double cost = r.squaredNorm();

  Eigen::MatrixXd A = J.transpose() * J;
  double mu = 1e-3 * std::max(1e-12, A.diagonal().maxCoeff());
  double nu = 2.0;
  const Eigen::Index nvar = x.size();

  int it = 0;
  for (; it < options.max_iters; ++it) {
    if (r.lpNorm<Eigen::Infinity>() <= options.residual_tol) {
      out.converged = true;
      break;
    }
    Eigen::VectorXd g = J.transpose() * r;
    if (g.lpNorm<Eigen::Infinity>() <= options.gradient_tol) break;

    A = J.transpose() * J;
    A.diagonal().array() += mu;
    Eigen::VectorXd step = A.ldlt().solve(-g);
    if (step.norm() <= options.step_tol * (x.norm() + options.step_tol)) break;

    Eigen::VectorXd x_new = x + step;
    Eigen::VectorXd r_new;
    Eigen::MatrixXd J_new;
    f(x_new, r_new, &J_new);
    double cost_new = r_new.squaredNorm();
    double predicted = step.dot(mu * step - g);
    double gain = predicted > 0.0 ? (cost - cost_new) / predicted : -1.0;
    if (gain > 0.0 && std::isfinite(cost_new)) {
      x = std::move(x_new);
      r = std::move(r_new);
      J = std::move(J_new);
      cost = cost_new;
      mu *= std::max(1.0 / 3.0, 1.0 - std::pow(2.0 * gain - 1.0, 3));
      nu = 2.0;
    } else {
      mu *= nu;
      nu *= 2.0;
      if (!std::isfinite(mu) || mu > 1e300) break;
    }
  }
  out.iterations = it;

  // Near singular roots Newton only converges linearly, so the polish may need many steps; a
  // step is halved a few times before giving up.
  for (int k = 0; k < options.polish_iters && nvar > 0; ++k) {
    const double current = r.lpNorm<Eigen::Infinity>();
    if (current <= options.residual_tol) break;
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(J);
    const Eigen::VectorXd step = cod.solve(-r);
    bool accepted = false;
    double scale = 1.0;
    for (int halving = 0; halving < 6 && !accepted; ++halving, scale *= 0.5) {
      Eigen::VectorXd x_new = x + scale * step;
      Eigen::VectorXd r_new;
      Eigen::MatrixXd J_new;
      f(x_new, r_new, &J_new);
      if (r_new.allFinite() && r_new.lpNorm<Eigen::Infinity>() < current) {
        x = std::move(x_new);
        r = std::move(r_new);
        J = std::move(J_new);
        accepted = true;
      }
    }
    if (!accepted) break;
  }

  out.converged = out.converged || r.lpNorm<Eigen::Infinity>() <= options.residual_tol;
  out.x = std::move(x);
  out.residuals = std::move(r);
  return out;
}

}  // namespace germscan
