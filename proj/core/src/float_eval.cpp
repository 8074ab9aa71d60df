#include "germscan/float_eval.hpp"

#include <algorithm>
#include <cmath>

#include "germscan/errors.hpp"

namespace germscan {

CompiledHermitian::CompiledHermitian(const HermitianPolynomial& rho) : n_(rho.dim()), center_(to_float(rho.center())) {
  terms_.reserve(rho.terms().size());
  for (const auto& [key, c] : rho.terms()) {
    terms_.push_back(Term{key.first.entries(), key.second.entries(), c.to_complex()});
    for (std::size_t k = 0; k < n_; ++k) max_exp_ = std::max({max_exp_, key.first[k], key.second[k]});
  }
}

void CompiledHermitian::powers(const CPoint& v, std::vector<std::vector<std::complex<double>>>& table) const {
  table.assign(n_, std::vector<std::complex<double>>(max_exp_ + 1, 1.0));
  for (std::size_t k = 0; k < n_; ++k) {
    for (unsigned e = 1; e <= max_exp_; ++e) table[k][e] = table[k][e - 1] * v[k];
  }
}

std::complex<double> CompiledHermitian::eval(const CPoint& z, const CPoint& w) const {
  if (z.size() != n_ || w.size() != n_) throw DimensionMismatch("compiled eval: dimension mismatch");
  CPoint u(n_), v(n_);
  for (std::size_t k = 0; k < n_; ++k) {
    u[k] = z[k] - center_[k];
    v[k] = std::conj(w[k] - center_[k]);
  }
  std::vector<std::vector<std::complex<double>>> tu, tv;
  powers(u, tu);
  powers(v, tv);
  std::complex<double> sum = 0.0;
  for (const auto& t : terms_) {
    std::complex<double> m = t.coef;
    for (std::size_t k = 0; k < n_; ++k) m *= tu[k][t.alpha[k]] * tv[k][t.beta[k]];
    sum += m;
  }
  return sum;
}

std::complex<double> CompiledHermitian::eval_with_gradient(const CPoint& z, const CPoint& w,
                                                           std::vector<std::complex<double>>& dz,
                                                           std::vector<std::complex<double>>& dwbar) const {
  CPoint u(n_), v(n_);
  for (std::size_t k = 0; k < n_; ++k) {
    u[k] = z[k] - center_[k];
    v[k] = std::conj(w[k] - center_[k]);
  }
  std::vector<std::vector<std::complex<double>>> tu, tv;
  powers(u, tu);
  powers(v, tv);
  dz.assign(n_, 0.0);
  dwbar.assign(n_, 0.0);
  std::complex<double> sum = 0.0;
  std::vector<std::complex<double>> fu(n_), fv(n_);
  for (const auto& t : terms_) {
    std::complex<double> m = t.coef;
    for (std::size_t k = 0; k < n_; ++k) {
      fu[k] = tu[k][t.alpha[k]];
      fv[k] = tv[k][t.beta[k]];
      m *= fu[k] * fv[k];
    }
    sum += m;
    for (std::size_t k = 0; k < n_; ++k) {
      if (t.alpha[k] != 0) {
        std::complex<double> d = t.coef * static_cast<double>(t.alpha[k]) * tu[k][t.alpha[k] - 1] * fv[k];
        for (std::size_t l = 0; l < n_; ++l) {
          if (l != k) d *= fu[l] * fv[l];
        }
        dz[k] += d;
      }
      if (t.beta[k] != 0) {
        std::complex<double> d = t.coef * static_cast<double>(t.beta[k]) * tv[k][t.beta[k] - 1] * fu[k];
        for (std::size_t l = 0; l < n_; ++l) {
          if (l != k) d *= fu[l] * fv[l];
        }
        dwbar[k] += d;
      }
    }
  }
  return sum;
}

std::vector<double> CompiledHermitian::real_gradient(const CPoint& z) const {
  std::vector<std::complex<double>> dz, dwbar;
  eval_with_gradient(z, z, dz, dwbar);
  std::vector<double> g(2 * n_);
  for (std::size_t k = 0; k < n_; ++k) {
    std::complex<double> dx = dz[k] + dwbar[k];
    std::complex<double> dy = std::complex<double>(0.0, 1.0) * (dz[k] - dwbar[k]);
    g[2 * k] = dx.real();
    g[2 * k + 1] = dy.real();
  }
  return g;
}

double CompiledHermitian::absolute_scale(const CPoint& z, const CPoint& w) const {
  double sum = 0.0;
  for (const auto& t : terms_) {
    double m = std::abs(t.coef);
    for (std::size_t k = 0; k < n_; ++k) {
      m *= std::pow(std::abs(z[k] - center_[k]), t.alpha[k]) * std::pow(std::abs(w[k] - center_[k]), t.beta[k]);
    }
    sum += m;
  }
  return sum;
}

}  // namespace germscan
