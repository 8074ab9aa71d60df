#include "germscan/segre.hpp"

#include <algorithm>
#include <cmath>

#include "germscan/errors.hpp"

namespace germscan {

HoloPolynomial segre_poly(const HermitianPolynomial& rho, const QPoint& w) {
  if (w.size() != rho.dim()) throw DimensionMismatch("segre_poly: dimension mismatch");
  QPoint wbar(w.size());
  for (std::size_t k = 0; k < w.size(); ++k) wbar[k] = (w[k] - rho.center()[k]).conj();
  HoloPolynomial out(rho.dim(), rho.center());
  for (const auto& [key, c] : rho.terms()) out.add_term(key.first, c * monomial_value(key.second, wbar));
  return out;
}

bool segre_contains(const HermitianPolynomial& rho, const QPoint& w, const QPoint& z, double tol) {
  ComplexRational v = eval_hermitian(rho, z, w);
  if (tol <= 0.0) return v.is_zero();
  return std::sqrt(v.norm().get_d()) <= tol;
}

bool segre_contains(const HermitianPolynomial& rho, const CPoint& w, const CPoint& z, double tol) {
  return std::abs(eval_hermitian(rho, z, w)) <= tol;
}

bool check_symmetry(const HermitianPolynomial& rho, const QPoint& z, const QPoint& w) {
  bool forward = eval_hermitian(rho, z, w).is_zero();
  bool backward = eval_hermitian(rho, w, z).is_zero();
  return forward == backward;
}

SegreFamilyResidual::SegreFamilyResidual(const HermitianPolynomial& rho, std::vector<QPoint> anchors,
                                         double tolerance)
    : rho_(&rho), exact_anchors_(std::move(anchors)), tolerance_(tolerance) {
  if (exact_anchors_.empty()) throw InvalidInput("Segre family needs at least one anchor");
  if (!(tolerance_ >= 0.0)) throw InvalidInput("Segre family tolerance must be non-negative");
  for (const auto& a : exact_anchors_) {
    if (a.size() != rho.dim()) throw DimensionMismatch("anchor dimension differs from rho");
    float_anchors_.push_back(to_float(a));
  }
}

SegreFamilyResidual::SegreFamilyResidual(const HermitianPolynomial& rho, std::vector<CPoint> anchors,
                                         double tolerance)
    : rho_(&rho), float_anchors_(std::move(anchors)), tolerance_(tolerance) {
  if (float_anchors_.empty()) throw InvalidInput("Segre family needs at least one anchor");
  if (!(tolerance_ > 0.0)) throw InvalidInput("floating-point anchors require a positive tolerance");
  for (const auto& a : float_anchors_) {
    if (a.size() != rho.dim()) throw DimensionMismatch("anchor dimension differs from rho");
  }
}

double SegreFamilyResidual::residual(const QPoint& z) const {
  if (!exact()) return residual(to_float(z));
  Rational worst = 0;
  for (const auto& a : exact_anchors_) worst = std::max(worst, eval_hermitian(*rho_, z, a).norm());
  return sgn(worst) == 0 ? 0.0 : std::sqrt(worst.get_d());
}

double SegreFamilyResidual::residual(const CPoint& z) const {
  double worst = 0.0;
  for (const auto& a : float_anchors_) worst = std::max(worst, std::abs(eval_hermitian(*rho_, z, a)));
  return worst;
}

}  // namespace germscan
