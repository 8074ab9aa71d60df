#pragma once

#include <complex>
#include <vector>

#include "germscan/polynomial.hpp"

namespace germscan {

/// Double-precision snapshot of a Hermitian polynomial for the numerical search. Evaluates the
/// polarized form rho(z, conj w) together with its derivatives in z and in conj w.
class CompiledHermitian {
 public:
  explicit CompiledHermitian(const HermitianPolynomial& rho);

  std::size_t dim() const { return n_; }
  const CPoint& center() const { return center_; }

  std::complex<double> eval(const CPoint& z, const CPoint& w) const;

  /// dz[k] = d/dz_k rho(z, conj w); dwbar[k] = d/d(conj w_k) rho(z, conj w).
  std::complex<double> eval_with_gradient(const CPoint& z, const CPoint& w, std::vector<std::complex<double>>& dz,
                                          std::vector<std::complex<double>>& dwbar) const;

  /// Real gradient of rho(z, conj z) as a function on R^{2n}, ordered (x_1, y_1, ..., x_n, y_n).
  std::vector<double> real_gradient(const CPoint& z) const;

  /// sum |c| |z-p|^a |w-p|^b, the scale against which the evaluation error is bounded.
  double absolute_scale(const CPoint& z, const CPoint& w) const;

 private:
  struct Term {
    std::vector<unsigned> alpha;
    std::vector<unsigned> beta;
    std::complex<double> coef;
  };

  void powers(const CPoint& v, std::vector<std::vector<std::complex<double>>>& table) const;

  std::size_t n_;
  unsigned max_exp_ = 0;
  CPoint center_;
  std::vector<Term> terms_;
};

}  // namespace germscan
