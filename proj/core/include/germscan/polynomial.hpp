#pragma once

#include <complex>
#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "germscan/multi_index.hpp"
#include "germscan/rational.hpp"

namespace germscan {

/// (alpha, beta) exponent pair of the monomial (z-p)^alpha * conj(z-p)^beta.
using BiExponent = std::pair<MultiIndex, MultiIndex>;

/// Polynomial in (z - p, conj(z - p)) with exact complex-rational coefficients and no
/// symmetry requirement. Zero coefficients are never stored.
///
/// Evaluation is polarized: eval(z, w) = sum c_ab (z-p)^a conj(w-p)^b, so eval(z, z) is the
/// function value and eval(., w) for fixed w is holomorphic in the first argument.
class BiPolynomial {
 public:
  using TermMap = std::map<BiExponent, ComplexRational>;

  BiPolynomial() = default;
  explicit BiPolynomial(std::size_t n);
  BiPolynomial(std::size_t n, QPoint center);

  static BiPolynomial constant(std::size_t n, const ComplexRational& c);
  /// The coordinate function z_j - p_j.
  static BiPolynomial z(std::size_t n, std::size_t j);
  /// conj(z_j - p_j).
  static BiPolynomial zbar(std::size_t n, std::size_t j);
  /// Re(z_j - p_j) = ((z_j - p_j) + conj(z_j - p_j)) / 2.
  static BiPolynomial re(std::size_t n, std::size_t j);
  /// Im(z_j - p_j).
  static BiPolynomial im(std::size_t n, std::size_t j);

  std::size_t dim() const { return n_; }
  const QPoint& center() const { return center_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const MultiIndex& alpha, const MultiIndex& beta, const ComplexRational& c);
  ComplexRational coefficient(const MultiIndex& alpha, const MultiIndex& beta) const;

  /// Largest |alpha| + |beta| over stored terms; 0 for the zero polynomial.
  unsigned degree() const;

  /// Swaps alpha and beta and conjugates every coefficient (the function conj(f)).
  BiPolynomial conj() const;
  bool is_hermitian() const;

  ComplexRational eval(const QPoint& z, const QPoint& w) const;
  std::complex<double> eval(const CPoint& z, const CPoint& w) const;

  /// Same function, re-expanded around a new center.
  BiPolynomial recentered(const QPoint& new_center) const;

  BiPolynomial& operator+=(const BiPolynomial& o);
  BiPolynomial& operator-=(const BiPolynomial& o);
  BiPolynomial& operator*=(const ComplexRational& s);
  friend BiPolynomial operator+(BiPolynomial a, const BiPolynomial& b) { return a += b; }
  friend BiPolynomial operator-(BiPolynomial a, const BiPolynomial& b) { return a -= b; }
  friend BiPolynomial operator*(const BiPolynomial& a, const BiPolynomial& b);
  friend BiPolynomial operator*(BiPolynomial a, const ComplexRational& s) { return a *= s; }
  friend BiPolynomial operator*(const ComplexRational& s, BiPolynomial a) { return a *= s; }
  friend bool operator==(const BiPolynomial& a, const BiPolynomial& b);

 private:
  void check_compatible(const BiPolynomial& o) const;

  std::size_t n_ = 0;
  QPoint center_;
  TermMap terms_;
};

BiPolynomial pow(const BiPolynomial& base, unsigned exponent);

/// Real-valued polynomial rho(z, conj z): a BiPolynomial whose coefficients satisfy
/// c_{ba} = conj(c_{ab}). Immutable.
class HermitianPolynomial {
 public:
  /// Throws NotHermitian when the symmetry fails.
  explicit HermitianPolynomial(BiPolynomial poly);

  /// Skips validation. Only for negative controls in symmetry self-tests.
  static HermitianPolynomial unchecked(BiPolynomial poly);

  const BiPolynomial& poly() const { return poly_; }
  std::size_t dim() const { return poly_.dim(); }
  const QPoint& center() const { return poly_.center(); }
  const BiPolynomial::TermMap& terms() const { return poly_.terms(); }
  unsigned degree() const { return poly_.degree(); }
  bool validated() const { return validated_; }

  HermitianPolynomial recentered(const QPoint& new_center) const;

 private:
  HermitianPolynomial(BiPolynomial poly, bool validated);

  BiPolynomial poly_;
  bool validated_ = true;
};

/// rho(z, conj w). Exact; when z == w the imaginary part is exactly zero.
ComplexRational eval_hermitian(const HermitianPolynomial& rho, const QPoint& z, const QPoint& w);

/// Floating-point polarized evaluation.
///
/// Error contract: for degree <= 8, coefficient height <= 2^16 and coordinates in
/// [-2, 2]^{2n}, |computed - exact| <= 2^-40 * sum |c_ab| |z-p|^a |w-p|^b.
std::complex<double> eval_hermitian(const HermitianPolynomial& rho, const CPoint& z, const CPoint& w);

/// Holomorphic polynomial in z - p. Zero coefficients are never stored.
class HoloPolynomial {
 public:
  using TermMap = std::map<MultiIndex, ComplexRational>;

  HoloPolynomial() = default;
  explicit HoloPolynomial(std::size_t n);
  HoloPolynomial(std::size_t n, QPoint center);

  std::size_t dim() const { return n_; }
  const QPoint& center() const { return center_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  unsigned degree() const;

  void add_term(const MultiIndex& alpha, const ComplexRational& c);
  ComplexRational coefficient(const MultiIndex& alpha) const;

  ComplexRational eval(const QPoint& z) const;
  std::complex<double> eval(const CPoint& z) const;

  /// f viewed as a function of (z, conj z).
  BiPolynomial as_bi() const;
  /// |f|^2 = f * conj(f).
  BiPolynomial norm_squared() const;
  /// 2 Re f = f + conj(f).
  BiPolynomial twice_real_part() const;

  /// f(p + A (z - p)) for an n x n exact matrix A (row i gives the new z_i - p_i).
  HoloPolynomial linear_substitute(const std::vector<std::vector<ComplexRational>>& matrix) const;

  HoloPolynomial& operator+=(const HoloPolynomial& o);
  HoloPolynomial& operator-=(const HoloPolynomial& o);
  HoloPolynomial& operator*=(const ComplexRational& s);
  friend HoloPolynomial operator+(HoloPolynomial a, const HoloPolynomial& b) { return a += b; }
  friend HoloPolynomial operator-(HoloPolynomial a, const HoloPolynomial& b) { return a -= b; }
  friend HoloPolynomial operator*(HoloPolynomial a, const ComplexRational& s) { return a *= s; }
  friend HoloPolynomial operator*(const ComplexRational& s, HoloPolynomial a) { return a *= s; }
  friend HoloPolynomial operator*(const HoloPolynomial& a, const HoloPolynomial& b);
  friend bool operator==(const HoloPolynomial& a, const HoloPolynomial& b);

 private:
  std::size_t n_ = 0;
  QPoint center_;
  TermMap terms_;
};

/// Monomial (z - p)^a, conj(w - p)^b as exact products.
ComplexRational monomial_value(const MultiIndex& alpha, const QPoint& shifted);

}  // namespace germscan
