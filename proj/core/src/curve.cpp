#include "germscan/curve.hpp"

#include <algorithm>

#include "germscan/errors.hpp"

namespace germscan {

namespace {

UnivariateSeries multiply(const UnivariateSeries& a, const UnivariateSeries& b, unsigned truncation) {
  UnivariateSeries out;
  for (const auto& [ka, ca] : a) {
    for (const auto& [kb, cb] : b) {
      if (ka + kb > truncation) break;
      auto& slot = out[ka + kb];
      slot += ca * cb;
    }
  }
  std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
  return out;
}

UnivariateSeries conjugated(const UnivariateSeries& s) {
  UnivariateSeries out;
  for (const auto& [k, c] : s) out.emplace(k, c.conj());
  return out;
}

}  // namespace

CurveJet::CurveJet(QPoint anchor, std::vector<UnivariateSeries> components, unsigned truncation)
    : anchor_(std::move(anchor)), components_(std::move(components)), truncation_(truncation) {
  if (truncation_ == 0) throw InvalidInput("curve truncation order must be positive");
  if (components_.size() != anchor_.size()) {
    throw DimensionMismatch("curve has " + std::to_string(components_.size()) + " components but anchor has dimension " +
                            std::to_string(anchor_.size()));
  }
  for (auto& comp : components_) {
    if (auto it = comp.find(0); it != comp.end()) {
      throw InvalidInput("curve components must not carry a constant term; it is the anchor");
    }
    std::erase_if(comp, [this](const auto& kv) { return kv.second.is_zero() || kv.first > truncation_; });
  }
}

CurveJet CurveJet::monomial(QPoint anchor, const std::vector<ComplexRational>& coefficients,
                            const std::vector<unsigned>& exponents, unsigned truncation) {
  if (coefficients.size() != anchor.size() || exponents.size() != anchor.size()) {
    throw DimensionMismatch("monomial curve: coefficient/exponent count differs from dimension");
  }
  std::vector<UnivariateSeries> comps(anchor.size());
  unsigned top = 1;
  for (std::size_t j = 0; j < anchor.size(); ++j) {
    if (coefficients[j].is_zero()) continue;
    if (exponents[j] == 0) throw InvalidInput("monomial curve exponents must be positive");
    comps[j].emplace(exponents[j], coefficients[j]);
    top = std::max(top, exponents[j]);
  }
  return CurveJet(std::move(anchor), std::move(comps), truncation == 0 ? top : truncation);
}

bool CurveJet::degenerate() const {
  return std::all_of(components_.begin(), components_.end(), [](const auto& c) { return c.empty(); });
}

unsigned CurveJet::max_degree() const {
  unsigned m = 0;
  for (const auto& c : components_) {
    if (!c.empty()) m = std::max(m, c.rbegin()->first);
  }
  return m;
}

CurveJet CurveJet::reparametrized(const ComplexRational& u) const {
  std::vector<UnivariateSeries> comps = components_;
  for (auto& c : comps) {
    for (auto& [k, a] : c) a *= pow(u, k);
  }
  return CurveJet(anchor_, std::move(comps), truncation_);
}

QPoint CurveJet::point_at(const ComplexRational& zeta) const {
  QPoint out = anchor_;
  for (std::size_t j = 0; j < out.size(); ++j) {
    for (const auto& [k, a] : components_[j]) out[j] += a * pow(zeta, k);
  }
  return out;
}

unsigned exact_truncation(const HermitianPolynomial& rho, const CurveJet& gamma) {
  return std::max(1U, rho.degree() * std::max(1U, gamma.max_degree()));
}

TruncatedSeries compose_with_curve(const HermitianPolynomial& rho, const CurveJet& gamma) {
  if (gamma.dim() != rho.dim()) throw DimensionMismatch("curve and polynomial dimensions differ");
  if (gamma.anchor() != rho.center()) throw AnchorMismatch("curve anchor differs from the polynomial center");
  const unsigned T = gamma.truncation();
  const std::size_t n = rho.dim();

  unsigned max_exp = 0;
  for (const auto& [key, c] : rho.terms()) {
    for (unsigned e : key.first.entries()) max_exp = std::max(max_exp, e);
    for (unsigned e : key.second.entries()) max_exp = std::max(max_exp, e);
  }
  // powers[j][e] = s_j^e truncated at T
  std::vector<std::vector<UnivariateSeries>> powers(n);
  for (std::size_t j = 0; j < n; ++j) {
    powers[j].push_back(UnivariateSeries{{0U, ComplexRational(1)}});
    for (unsigned e = 1; e <= max_exp; ++e) {
      powers[j].push_back(multiply(powers[j].back(), gamma.components()[j], T));
    }
  }

  BiPolynomial out(1);
  bool dropped = false;
  for (const auto& [key, c] : rho.terms()) {
    UnivariateSeries hol{{0U, c}};
    UnivariateSeries anti{{0U, ComplexRational(1)}};
    for (std::size_t j = 0; j < n; ++j) {
      if (key.first[j]) hol = multiply(hol, powers[j][key.first[j]], T);
      if (key.second[j]) anti = multiply(anti, conjugated(powers[j][key.second[j]]), T);
    }
    for (const auto& [ka, ca] : hol) {
      for (const auto& [kb, cb] : anti) {
        if (ka + kb > T) {
          dropped = true;
          break;
        }
        out.add_term(MultiIndex{ka}, MultiIndex{kb}, ca * cb);
      }
    }
  }
  TruncatedSeries result{std::move(out), T, false};
  result.exact = !dropped && T >= exact_truncation(rho, gamma);
  return result;
}

VanishingOrder vanishing_order(const TruncatedSeries& s) {
  VanishingOrder v;
  v.truncation = s.truncation;
  v.exact = s.exact;
  bool found = false;
  for (const auto& [key, c] : s.series.terms()) {
    unsigned deg = key.first.degree() + key.second.degree();
    if (deg > s.truncation) continue;
    if (!found || deg < v.value) v.value = deg;
    found = true;
  }
  v.infinite = !found;
  return v;
}

unsigned curve_order(const CurveJet& gamma) {
  if (gamma.degenerate()) throw DegenerateCurve("curve is constant up to its truncation order");
  unsigned order = gamma.truncation() + 1;
  for (const auto& c : gamma.components()) {
    if (!c.empty()) order = std::min(order, c.begin()->first);
  }
  return order;
}

}  // namespace germscan
