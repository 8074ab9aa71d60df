#pragma once

#include <vector>

#include "germscan/polynomial.hpp"
#include "germscan/rational.hpp"

namespace germscan {

/// Defining function z -> rho(z, conj w) of the Segre variety of w.
HoloPolynomial segre_poly(const HermitianPolynomial& rho, const QPoint& w);

/// The Segre variety is all of C^n (its defining polynomial vanishes identically).
inline bool is_degenerate(const HoloPolynomial& segre) { return segre.is_zero(); }

/// |rho(z, conj w)| <= tol. With exact points and tol == 0 the test is exact.
bool segre_contains(const HermitianPolynomial& rho, const QPoint& w, const QPoint& z, double tol = 0.0);
bool segre_contains(const HermitianPolynomial& rho, const CPoint& w, const CPoint& z, double tol);

/// (z in S_w) <=> (w in S_z), decided exactly. Always true for a validated Hermitian rho.
bool check_symmetry(const HermitianPolynomial& rho, const QPoint& z, const QPoint& w);

/// Finite-sample stand-in for an intersection of Segre varieties over a set of anchors.
class SegreFamilyResidual {
 public:
  /// Exact anchors; a zero tolerance is allowed.
  SegreFamilyResidual(const HermitianPolynomial& rho, std::vector<QPoint> anchors, double tolerance = 0.0);
  /// Floating-point anchors; tolerance must be positive.
  SegreFamilyResidual(const HermitianPolynomial& rho, std::vector<CPoint> anchors, double tolerance);

  const HermitianPolynomial& rho() const { return *rho_; }
  bool exact() const { return !exact_anchors_.empty(); }
  double tolerance() const { return tolerance_; }
  std::size_t size() const { return float_anchors_.size(); }

  /// max over anchors a of |rho(z, conj a)|. Exactly 0.0 when every value vanishes exactly.
  double residual(const QPoint& z) const;
  double residual(const CPoint& z) const;

  bool contains(const QPoint& z) const { return residual(z) <= tolerance_; }
  bool contains(const CPoint& z) const { return residual(z) <= tolerance_; }

 private:
  const HermitianPolynomial* rho_;
  std::vector<QPoint> exact_anchors_;
  std::vector<CPoint> float_anchors_;
  double tolerance_;
};

inline double intersection_residual(const SegreFamilyResidual& fam, const QPoint& z) { return fam.residual(z); }
inline double intersection_residual(const SegreFamilyResidual& fam, const CPoint& z) { return fam.residual(z); }

}  // namespace germscan
