#pragma once

#include <Eigen/Dense>

#include <complex>
#include <map>
#include <optional>
#include <vector>

#include "germscan/curve.hpp"
#include "germscan/errors.hpp"
#include "germscan/polynomial.hpp"

namespace germscan {

// ---------------------------------------------------------------------------
// Holomorphic decomposition 4 rho = 2 Re h + sum |f^b|^2 - sum |g^b|^2

struct HoloDecomposition {
  QPoint center;
  Rational t;
  std::vector<Rational> delta;
  HoloPolynomial h;
  /// Keyed by beta, |beta| >= 1, over the betas carrying a nonzero coefficient of rho.
  std::map<MultiIndex, HoloPolynomial> f;
  std::map<MultiIndex, HoloPolynomial> g;

  /// 2 Re h + sum |f^b|^2 - sum |g^b|^2 as a polynomial in (z, conj z).
  BiPolynomial reassembled() const;
};

/// Builds the decomposition around rho's center and verifies the identity coefficient by
/// coefficient before returning. Requires 0 < t < 1, delta_j > 0 and rho vanishing at its center.
/// An empty delta means (1, ..., 1).
HoloDecomposition holo_decompose(const HermitianPolynomial& rho, const Rational& t = Rational(1, 2),
                                 std::vector<Rational> delta = {});

/// Exact check 4 rho == reassembled().
bool decomposition_identity_holds(const HermitianPolynomial& rho, const HoloDecomposition& dec);

// ---------------------------------------------------------------------------
// Type lower bounds along curves

struct TypeOptions {
  unsigned max_curve_degree = 3;
  /// How many entries of the fixed coefficient list {1, -1, i, -i, 2, -2, 1+i, 1-i, ...} each
  /// component of a monomial curve may use.
  unsigned coefficient_budget = 2;
  /// Extra polynomial curves, anchored at the point, composed exactly.
  std::vector<CurveJet> user_curves;
};

struct TypeBound {
  /// Some searched curve makes rho o gamma vanish identically.
  bool infinite = false;
  /// max nu(rho o gamma) / nu(gamma) over the searched curves (meaningful when !infinite).
  Rational value;
  std::optional<CurveJet> witness;
  std::size_t curves_examined = 0;
};

/// Lower bound for sup_gamma nu(rho o gamma)/nu(gamma) at p. Throws NotOnVariety unless
/// rho(p, conj p) == 0 exactly.
TypeBound type_lower_bound(const HermitianPolynomial& rho, const QPoint& p, const TypeOptions& options = {});

/// Fixed coefficient list used by the monomial-curve search.
std::vector<ComplexRational> curve_coefficient_list(unsigned budget);

// ---------------------------------------------------------------------------
// Monomial ideals and the invariants tau*, K, D

class MonomialIdeal {
 public:
  /// Reduces the generators to the minimal antichain. Throws InvalidInput for the unit ideal
  /// (a zero exponent) or wrong lengths.
  MonomialIdeal(std::size_t n, std::vector<MultiIndex> generators);

  /// Powers of the maximal ideal: all monomials of degree k.
  static MonomialIdeal maximal_power(std::size_t n, unsigned k);

  std::size_t dim() const { return n_; }
  const std::vector<MultiIndex>& generators() const { return gens_; }
  bool contains(const MultiIndex& m) const;
  /// Zero set is the single point: every variable has a pure power among the generators.
  bool zero_dimensional() const;
  unsigned max_generator_degree() const;

 private:
  std::size_t n_;
  std::vector<MultiIndex> gens_;
};

/// Smallest k with m^k contained in I; nullopt when infinite.
std::optional<unsigned> ideal_K(const MonomialIdeal& ideal);
/// Number of standard monomials (colength); nullopt when infinite.
std::optional<unsigned long> ideal_D(const MonomialIdeal& ideal);
/// Monomial-curve order of contact: max over weights a in {1..A}^n of min_gen <a, alpha> / min a.
/// A == 0 selects 2 * max generator degree. nullopt (infinite) when I is not zero-dimensional.
std::optional<Rational> tau_star_monomial(const MonomialIdeal& ideal, unsigned weight_bound = 0);

struct InequalityChainReport {
  std::optional<Rational> tau_star;
  std::optional<unsigned> K;
  std::optional<unsigned long> D;
  bool all_finite = false;
  bool all_infinite = false;
  /// tau* <= K <= D when finite, or all three infinite together.
  bool holds = false;
};

InequalityChainReport check_inequality_chain(const MonomialIdeal& ideal, unsigned weight_bound = 0);

/// Generators h and f^b - sum_s u_{bs} g^s of the ideal attached to a unitary U, whose rows and
/// columns follow the key order of dec.f / dec.g.
std::vector<HoloPolynomial> decomposition_ideal_generators(const HoloDecomposition& dec,
                                                           const std::vector<std::vector<ComplexRational>>& unitary);

/// The ideal as a MonomialIdeal, when the linear span of the generators (after the optional
/// change of coordinates z - p -> A (z - p)) is spanned by monomials; nullopt ("unsupported")
/// otherwise.
std::optional<MonomialIdeal> as_monomial_ideal(
    const std::vector<HoloPolynomial>& generators,
    const std::optional<std::vector<std::vector<ComplexRational>>>& change_of_coordinates = std::nullopt);

// ---------------------------------------------------------------------------
// Matching isometry for families with equal Gram matrices

struct FiniteIsometry {
  Eigen::MatrixXcd matrix;
  std::size_t dim() const { return static_cast<std::size_t>(matrix.rows()); }
};

/// Gram matrices of the two families differ at (first, second).
class GramMismatch : public Error {
 public:
  GramMismatch(std::size_t first, std::size_t second, std::complex<double> f_inner, std::complex<double> g_inner);
  std::size_t first;
  std::size_t second;
  std::complex<double> f_inner;
  std::complex<double> g_inner;
};

/// Construction finished but the result misses the contract bounds.
class MatchingFailure : public Error {
 public:
  using Error::Error;
};

/// Unitary U with ||U G_a - F_a|| <= tol (1 + ||F_a||) and ||U*U - I|| <= tol. U maps a maximal
/// independent subfamily of G onto the corresponding F vectors and the orthogonal complement of
/// span G onto that of span F.
FiniteIsometry build_matching_isometry(const std::vector<Eigen::VectorXcd>& F, const std::vector<Eigen::VectorXcd>& G,
                                       double tol = 1e-10);

}  // namespace germscan
