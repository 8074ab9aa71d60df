#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "germscan/polynomial.hpp"
#include "germscan/rational.hpp"

namespace germscan {

/// Truncated univariate power series sum_{k>=1} a_k zeta^k (constant term lives in the anchor).
using UnivariateSeries = std::map<unsigned, ComplexRational>;

/// Holomorphic curve germ gamma(zeta) = anchor + (s_1(zeta), ..., s_n(zeta)) known up to order T.
class CurveJet {
 public:
  /// Throws InvalidInput when truncation is zero, DimensionMismatch when component count differs
  /// from the anchor dimension. Terms above the truncation order are dropped.
  CurveJet(QPoint anchor, std::vector<UnivariateSeries> components, unsigned truncation);

  /// gamma_j = anchor_j + c_j zeta^{a_j}; a component with c_j = 0 is constant and its exponent is
  /// ignored. Truncation 0 selects the largest exponent.
  static CurveJet monomial(QPoint anchor, const std::vector<ComplexRational>& coefficients,
                           const std::vector<unsigned>& exponents, unsigned truncation = 0);

  std::size_t dim() const { return anchor_.size(); }
  unsigned truncation() const { return truncation_; }
  const QPoint& anchor() const { return anchor_; }
  const std::vector<UnivariateSeries>& components() const { return components_; }

  /// Every component constant up to order T.
  bool degenerate() const;
  /// Largest exponent present in any component.
  unsigned max_degree() const;

  /// gamma(u zeta).
  CurveJet reparametrized(const ComplexRational& u) const;

  QPoint point_at(const ComplexRational& zeta) const;

 private:
  QPoint anchor_;
  std::vector<UnivariateSeries> components_;
  unsigned truncation_;
};

/// Bivariate series in (zeta, conj zeta): a BiPolynomial with n = 1 centered at 0, together with
/// the total degree up to which its coefficients are known.
struct TruncatedSeries {
  BiPolynomial series;
  unsigned truncation = 0;
  /// True when no term of the full composition was dropped, so the series is the exact value.
  bool exact = false;
};

/// rho(gamma(zeta), conj gamma(zeta)) truncated at total degree T in (zeta, conj zeta).
/// Throws AnchorMismatch when gamma is not anchored at rho's center.
TruncatedSeries compose_with_curve(const HermitianPolynomial& rho, const CurveJet& gamma);

/// Truncation order that makes compose_with_curve exact for a polynomial curve.
unsigned exact_truncation(const HermitianPolynomial& rho, const CurveJet& gamma);

/// Vanishing order of a truncated series. `infinite` means all coefficients through `truncation`
/// vanish; the true order is then > truncation unless `exact` is set, in which case the series is
/// identically zero.
struct VanishingOrder {
  bool infinite = false;
  unsigned value = 0;
  unsigned truncation = 0;
  bool exact = false;
};

VanishingOrder vanishing_order(const TruncatedSeries& s);

/// Minimal vanishing order among the components of gamma - anchor. Throws DegenerateCurve.
unsigned curve_order(const CurveJet& gamma);

}  // namespace germscan
