#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "germscan/multi_index.hpp"
#include "germscan/polynomial.hpp"
#include "germscan/rational.hpp"

namespace germscan::testing {

class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : rng_(seed) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  bool coin() { return integer(0, 1) == 1; }

  /// p/q with |p| <= height and 1 <= q <= height.
  Rational rational(long height) {
    Rational q(integer(-height, height), integer(1, height));
    q.canonicalize();
    return q;
  }

  ComplexRational complex_rational(long height) { return {rational(height), rational(height)}; }

  QPoint point(std::size_t n, long height) {
    QPoint p;
    for (std::size_t i = 0; i < n; ++i) p.push_back(complex_rational(height));
    return p;
  }

  MultiIndex multi_index(std::size_t n, unsigned max_degree) {
    MultiIndex m(n);
    const auto total = static_cast<unsigned>(integer(0, max_degree));
    for (unsigned k = 0; k < total; ++k) m[static_cast<std::size_t>(integer(0, static_cast<long>(n) - 1))] += 1;
    return m;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

/// Random Hermitian polynomial: each drawn term (a, b, c) also gets its mirror (b, a, conj c),
/// diagonal terms get a real coefficient. Total degree of every term is at most max_degree.
inline HermitianPolynomial random_hermitian(RandomSource& rs, std::size_t n, unsigned max_degree, long height,
                                            unsigned terms, bool zero_constant = false, QPoint center = {}) {
  if (center.empty()) center.assign(n, ComplexRational(0));
  BiPolynomial poly(n, center);
  for (unsigned t = 0; t < terms; ++t) {
    MultiIndex a = rs.multi_index(n, max_degree);
    MultiIndex b = rs.multi_index(n, max_degree);
    while (a.degree() + b.degree() > max_degree) {
      a = rs.multi_index(n, max_degree);
      b = rs.multi_index(n, max_degree);
    }
    if (zero_constant && a.is_zero() && b.is_zero()) continue;
    if (a == b) {
      poly.add_term(a, a, ComplexRational(rs.rational(height)));
    } else {
      ComplexRational c = rs.complex_rational(height);
      poly.add_term(a, b, c);
      poly.add_term(b, a, c.conj());
    }
  }
  return HermitianPolynomial(poly);
}

/// x1^2 - x2^2 + x3^2 - x4^3 with x_j = Re z_j, centered at the origin.
inline HermitianPolynomial mmz() {
  const std::size_t n = 4;
  BiPolynomial x1 = BiPolynomial::re(n, 0), x2 = BiPolynomial::re(n, 1), x3 = BiPolynomial::re(n, 2),
               x4 = BiPolynomial::re(n, 3);
  return HermitianPolynomial(x1 * x1 - x2 * x2 + x3 * x3 - pow(x4, 3));
}

/// sum_j sign_j |z_j|^(2 m_j).
inline HermitianPolynomial diagonal(const std::vector<int>& signs, const std::vector<unsigned>& powers) {
  const std::size_t n = signs.size();
  BiPolynomial poly(n);
  for (std::size_t j = 0; j < n; ++j) {
    MultiIndex m(n);
    m[j] = powers[j];
    poly.add_term(m, m, ComplexRational(signs[j]));
  }
  return HermitianPolynomial(poly);
}

inline HermitianPolynomial cone() { return diagonal({1, -1}, {1, 1}); }

inline QPoint qpoint(std::initializer_list<Rational> reals) {
  QPoint p;
  for (const auto& r : reals) p.push_back(ComplexRational(r));
  return p;
}

inline CPoint cpoint(std::initializer_list<double> reals) {
  CPoint p;
  for (double r : reals) p.emplace_back(r, 0.0);
  return p;
}

/// Term-by-term evaluation by repeated multiplication, sharing no code with the library's evaluator
/// beyond the scalar type.
inline ComplexRational naive_eval(const BiPolynomial& poly, const QPoint& z, const QPoint& w) {
  ComplexRational total(0);
  for (const auto& [key, c] : poly.terms()) {
    ComplexRational term = c;
    for (std::size_t j = 0; j < poly.dim(); ++j) {
      const ComplexRational zj = z[j] - poly.center()[j];
      const ComplexRational wj = (w[j] - poly.center()[j]).conj();
      for (unsigned k = 0; k < key.first[j]; ++k) term = term * zj;
      for (unsigned k = 0; k < key.second[j]; ++k) term = term * wj;
    }
    total = total + term;
  }
  return total;
}

#ifdef GERMSCAN_TEST_DATA
inline std::string data_path(const std::string& name) { return std::string(GERMSCAN_TEST_DATA) + "/" + name; }
#endif

}  // namespace germscan::testing
