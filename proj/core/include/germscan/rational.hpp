#pragma once

#include <gmpxx.h>

#include <complex>
#include <string>
#include <string_view>
#include <vector>

namespace germscan {

/// Arbitrary-precision rational, always kept canonical (positive denominator, lowest terms).
using Rational = mpq_class;

/// Parses "p/q", an integer, or a finite decimal such as "-0.125" into an exact rational.
/// Throws InvalidInput on anything else.
Rational parse_rational(std::string_view text);

/// "p/q", or "p" when the denominator is one.
std::string to_string(const Rational& q);

/// Exact value of a finite double.
Rational rational_from_double(double value);

class ComplexRational {
 public:
  ComplexRational() = default;
  ComplexRational(Rational re, Rational im = 0);  // NOLINT(google-explicit-constructor)
  ComplexRational(long re) : ComplexRational(Rational(re)) {}  // NOLINT(google-explicit-constructor)
  ComplexRational(int re) : ComplexRational(Rational(re)) {}   // NOLINT(google-explicit-constructor)

  static ComplexRational i() { return {0, 1}; }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  ComplexRational conj() const { return {re_, -im_}; }
  /// Squared modulus |x|^2, exact.
  Rational norm() const { return Rational(re_ * re_ + im_ * im_); }
  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

  ComplexRational& operator+=(const ComplexRational& o);
  ComplexRational& operator-=(const ComplexRational& o);
  ComplexRational& operator*=(const ComplexRational& o);
  ComplexRational& operator/=(const ComplexRational& o);

  friend ComplexRational operator+(ComplexRational a, const ComplexRational& b) { return a += b; }
  friend ComplexRational operator-(ComplexRational a, const ComplexRational& b) { return a -= b; }
  friend ComplexRational operator*(ComplexRational a, const ComplexRational& b) { return a *= b; }
  friend ComplexRational operator/(ComplexRational a, const ComplexRational& b) { return a /= b; }
  ComplexRational operator-() const { return {Rational(-re_), Rational(-im_)}; }

  friend bool operator==(const ComplexRational& a, const ComplexRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const ComplexRational& a, const ComplexRational& b) { return !(a == b); }

 private:
  Rational re_;
  Rational im_;
};

ComplexRational pow(const ComplexRational& base, unsigned exponent);
std::string to_string(const ComplexRational& z);
ComplexRational exact_from_complex(std::complex<double> z);

/// A point of C^n with exact coordinates.
using QPoint = std::vector<ComplexRational>;
/// A point of C^n with floating-point coordinates.
using CPoint = std::vector<std::complex<double>>;

CPoint to_float(const QPoint& p);
QPoint to_exact(const CPoint& p);

double distance(const CPoint& a, const CPoint& b);

}  // namespace germscan
