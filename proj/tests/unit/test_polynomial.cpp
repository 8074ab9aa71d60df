#include <gtest/gtest.h>

#include <cmath>

#include "germscan/errors.hpp"
#include "germscan/float_eval.hpp"
#include "germscan/polynomial.hpp"
#include "support.hpp"

using namespace germscan;
using namespace germscan::testing;

TEST(HermitianEval, MmzExamplesVanish) {
  const auto rho = mmz();
  EXPECT_TRUE(eval_hermitian(rho, qpoint({1, 1, 0, 0}), qpoint({1, 1, 0, 0})).is_zero());
  EXPECT_TRUE(eval_hermitian(rho, qpoint({0, 1, 0, -1}), qpoint({0, 1, 0, -1})).is_zero());
  EXPECT_EQ(eval_hermitian(rho, qpoint({2, 0, 0, 1}), qpoint({2, 0, 0, 1})), ComplexRational(3));
}

TEST(HermitianEval, ConeVanishesOnDiagonal) {
  EXPECT_TRUE(eval_hermitian(cone(), qpoint({1, 1}), qpoint({1, 1})).is_zero());
}

TEST(HermitianEval, MatchesNaiveOracle) {
  RandomSource rs(21);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = static_cast<std::size_t>(rs.integer(1, 3));
    QPoint center = rs.coin() ? QPoint(n, ComplexRational(0)) : rs.point(n, 5);
    const auto rho = random_hermitian(rs, n, 4, 100, 6, false, center);
    const QPoint z = rs.point(n, 20), w = rs.point(n, 20);
    EXPECT_EQ(eval_hermitian(rho, z, w), naive_eval(rho.poly(), z, w));
  }
}

TEST(HermitianEval, ConjugateSymmetryIsExact) {
  RandomSource rs(22);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = static_cast<std::size_t>(rs.integer(1, 3));
    const auto rho = random_hermitian(rs, n, 4, 100, 8);
    const QPoint z = rs.point(n, 30), w = rs.point(n, 30);
    EXPECT_EQ(eval_hermitian(rho, z, w), eval_hermitian(rho, w, z).conj());
    EXPECT_TRUE(eval_hermitian(rho, z, z).is_real());
  }
}

TEST(HermitianPolynomial, RejectsAsymmetricCoefficients) {
  BiPolynomial p(2);
  p.add_term(MultiIndex{1, 0}, MultiIndex{0, 1}, ComplexRational(1, 1));
  EXPECT_THROW(HermitianPolynomial{p}, NotHermitian);
  p.add_term(MultiIndex{0, 1}, MultiIndex{1, 0}, ComplexRational(1, 1));  // mirror must be the conjugate 1 - i
  EXPECT_THROW(HermitianPolynomial{p}, NotHermitian);

  BiPolynomial q(1);
  q.add_term(MultiIndex{1}, MultiIndex{1}, ComplexRational(0, 1));  // diagonal must be real
  EXPECT_THROW(HermitianPolynomial{q}, NotHermitian);

  auto loose = HermitianPolynomial::unchecked(p);
  EXPECT_FALSE(loose.validated());
}

TEST(HermitianPolynomial, NoZeroCoefficientsStored) {
  BiPolynomial p(1);
  p.add_term(MultiIndex{1}, MultiIndex{1}, ComplexRational(2));
  p.add_term(MultiIndex{1}, MultiIndex{1}, ComplexRational(-2));
  EXPECT_TRUE(p.is_zero());
  const auto prod = BiPolynomial::re(1, 0) * BiPolynomial::im(1, 0);
  for (const auto& [k, c] : prod.terms()) EXPECT_FALSE(c.is_zero());
}

TEST(HermitianPolynomial, RecenteringPreservesValues) {
  RandomSource rs(23);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = static_cast<std::size_t>(rs.integer(1, 3));
    const auto rho = random_hermitian(rs, n, 4, 50, 6);
    const auto moved = rho.recentered(rs.point(n, 5));
    EXPECT_TRUE(moved.poly().is_hermitian());
    const QPoint z = rs.point(n, 10), w = rs.point(n, 10);
    EXPECT_EQ(eval_hermitian(moved, z, w), eval_hermitian(rho, z, w));
  }
}

TEST(HermitianEval, DimensionMismatchThrows) {
  EXPECT_THROW(eval_hermitian(cone(), qpoint({1}), qpoint({1, 1})), DimensionMismatch);
}

TEST(FloatEval, WithinStatedErrorContract) {
  // degree <= 8, integer coefficients up to 2^16, coordinates in [-2, 2]
  RandomSource rs(24);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = static_cast<std::size_t>(rs.integer(1, 3));
    BiPolynomial p(n);
    for (int t = 0; t < 10; ++t) {
      MultiIndex a = rs.multi_index(n, 4), b = rs.multi_index(n, 4);
      ComplexRational c(Rational(rs.integer(-65536, 65536)), Rational(rs.integer(-65536, 65536)));
      if (a == b) c = ComplexRational(c.re());
      p.add_term(a, b, c);
      if (!(a == b)) p.add_term(b, a, c.conj());
    }
    const HermitianPolynomial rho(p);
    CPoint z, w;
    for (std::size_t j = 0; j < n; ++j) {
      z.emplace_back(rs.real(-2, 2), rs.real(-2, 2));
      w.emplace_back(rs.real(-2, 2), rs.real(-2, 2));
    }
    const std::complex<double> approx = eval_hermitian(rho, z, w);
    const ComplexRational exact = eval_hermitian(rho, to_exact(z), to_exact(w));
    const ComplexRational diff = exact_from_complex(approx) - exact;
    const double err = std::sqrt(diff.norm().get_d());
    const double scale = CompiledHermitian(rho).absolute_scale(z, w);
    EXPECT_LE(err, std::ldexp(1.0, -40) * scale);
    EXPECT_LE(std::abs(CompiledHermitian(rho).eval(z, w) - approx), std::ldexp(1.0, -40) * scale);
  }
}

TEST(FloatEval, GradientMatchesFiniteDifferences) {
  RandomSource rs(25);
  const auto rho = random_hermitian(rs, 3, 4, 10, 8);
  const CompiledHermitian f(rho);
  CPoint z{{0.3, -0.2}, {0.1, 0.5}, {-0.4, 0.2}}, w{{0.2, 0.1}, {-0.3, 0.4}, {0.5, -0.1}};
  std::vector<std::complex<double>> dz, dwbar;
  f.eval_with_gradient(z, w, dz, dwbar);
  const double h = 1e-6;
  for (std::size_t k = 0; k < 3; ++k) {
    CPoint zp = z, zm = z;
    zp[k] += h;
    zm[k] -= h;
    // holomorphic in z: the real-direction derivative is d/dz
    EXPECT_NEAR(std::abs((f.eval(zp, w) - f.eval(zm, w)) / (2 * h) - dz[k]), 0.0, 1e-6);
    CPoint wp = w, wm = w;
    wp[k] += h;
    wm[k] -= h;
    // antiholomorphic in w: the real-direction derivative is d/d(conj w)
    EXPECT_NEAR(std::abs((f.eval(z, wp) - f.eval(z, wm)) / (2 * h) - dwbar[k]), 0.0, 1e-6);
  }
}

TEST(HoloPolynomial, EvaluationIsLinear) {
  RandomSource rs(26);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = static_cast<std::size_t>(rs.integer(1, 3));
    HoloPolynomial q(n);
    for (int t = 0; t < 5; ++t) q.add_term(rs.multi_index(n, 4), rs.complex_rational(20));
    const ComplexRational a = rs.complex_rational(20);
    const QPoint z = rs.point(n, 10);
    EXPECT_EQ((a * q).eval(z), a * q.eval(z));
    EXPECT_EQ(q.norm_squared().eval(z, z), ComplexRational(q.eval(z).norm()));
    EXPECT_EQ(q.twice_real_part().eval(z, z), ComplexRational(Rational(2 * q.eval(z).re())));
    EXPECT_EQ(q.as_bi().eval(z, rs.point(n, 10)), q.eval(z));
  }
}

TEST(HoloPolynomial, LinearSubstitution) {
  // f = z1 * z2 under (z1, z2) -> (z1 + z2, z1 - z2) gives z1^2 - z2^2
  HoloPolynomial f(2);
  f.add_term(MultiIndex{1, 1}, ComplexRational(1));
  const std::vector<std::vector<ComplexRational>> a{{1, 1}, {1, -1}};
  HoloPolynomial expected(2);
  expected.add_term(MultiIndex{2, 0}, ComplexRational(1));
  expected.add_term(MultiIndex{0, 2}, ComplexRational(-1));
  EXPECT_EQ(f.linear_substitute(a), expected);
}
