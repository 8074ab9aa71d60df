#include "germscan/polynomial.hpp"

#include <algorithm>

#include "germscan/errors.hpp"

namespace germscan {

namespace {

QPoint zero_point(std::size_t n) { return QPoint(n, ComplexRational(0)); }

void check_point(const QPoint& center, std::size_t size) {
  if (center.size() != size) {
    throw DimensionMismatch("point has dimension " + std::to_string(size) + ", expected " +
                            std::to_string(center.size()));
  }
}

QPoint shift(const QPoint& z, const QPoint& center) {
  check_point(center, z.size());
  QPoint out(z.size());
  for (std::size_t k = 0; k < z.size(); ++k) out[k] = z[k] - center[k];
  return out;
}

CPoint shift(const CPoint& z, const QPoint& center) {
  if (center.size() != z.size()) {
    throw DimensionMismatch("point has dimension " + std::to_string(z.size()) + ", expected " +
                            std::to_string(center.size()));
  }
  CPoint out(z.size());
  for (std::size_t k = 0; k < z.size(); ++k) out[k] = z[k] - center[k].to_complex();
  return out;
}

// powers[k][e] = v_k^e for e <= max exponent.
template <typename T>
std::vector<std::vector<T>> power_table(const std::vector<T>& v, unsigned max_exp) {
  std::vector<std::vector<T>> table(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) {
    table[k].reserve(max_exp + 1);
    table[k].push_back(T(1));
    for (unsigned e = 1; e <= max_exp; ++e) table[k].push_back(table[k].back() * v[k]);
  }
  return table;
}

template <typename T>
T monomial_from_table(const MultiIndex& a, const std::vector<std::vector<T>>& table) {
  T out(1);
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] != 0) out *= table[k][a[k]];
  }
  return out;
}

unsigned max_single_exponent(const BiPolynomial::TermMap& terms) {
  unsigned m = 0;
  for (const auto& [key, c] : terms) {
    for (unsigned e : key.first.entries()) m = std::max(m, e);
    for (unsigned e : key.second.entries()) m = std::max(m, e);
  }
  return m;
}

}  // namespace

ComplexRational monomial_value(const MultiIndex& alpha, const QPoint& shifted) {
  ComplexRational out(1);
  for (std::size_t k = 0; k < alpha.size(); ++k) {
    if (alpha[k] != 0) out *= pow(shifted[k], alpha[k]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// BiPolynomial

BiPolynomial::BiPolynomial(std::size_t n) : n_(n), center_(zero_point(n)) {}

BiPolynomial::BiPolynomial(std::size_t n, QPoint center) : n_(n), center_(std::move(center)) {
  check_point(center_, n_);
}

BiPolynomial BiPolynomial::constant(std::size_t n, const ComplexRational& c) {
  BiPolynomial p(n);
  p.add_term(MultiIndex(n), MultiIndex(n), c);
  return p;
}

BiPolynomial BiPolynomial::z(std::size_t n, std::size_t j) {
  BiPolynomial p(n);
  p.add_term(MultiIndex::unit(n, j), MultiIndex(n), 1);
  return p;
}

BiPolynomial BiPolynomial::zbar(std::size_t n, std::size_t j) {
  BiPolynomial p(n);
  p.add_term(MultiIndex(n), MultiIndex::unit(n, j), 1);
  return p;
}

BiPolynomial BiPolynomial::re(std::size_t n, std::size_t j) {
  BiPolynomial p(n);
  p.add_term(MultiIndex::unit(n, j), MultiIndex(n), Rational(1, 2));
  p.add_term(MultiIndex(n), MultiIndex::unit(n, j), Rational(1, 2));
  return p;
}

BiPolynomial BiPolynomial::im(std::size_t n, std::size_t j) {
  // (z - zbar) / (2i) = -i/2 z + i/2 zbar
  BiPolynomial p(n);
  p.add_term(MultiIndex::unit(n, j), MultiIndex(n), ComplexRational(0, Rational(-1, 2)));
  p.add_term(MultiIndex(n), MultiIndex::unit(n, j), ComplexRational(0, Rational(1, 2)));
  return p;
}

void BiPolynomial::add_term(const MultiIndex& alpha, const MultiIndex& beta, const ComplexRational& c) {
  if (alpha.size() != n_ || beta.size() != n_) throw DimensionMismatch("exponent length differs from n");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(BiExponent{alpha, beta}, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

ComplexRational BiPolynomial::coefficient(const MultiIndex& alpha, const MultiIndex& beta) const {
  auto it = terms_.find(BiExponent{alpha, beta});
  return it == terms_.end() ? ComplexRational(0) : it->second;
}

unsigned BiPolynomial::degree() const {
  unsigned d = 0;
  for (const auto& [key, c] : terms_) d = std::max(d, key.first.degree() + key.second.degree());
  return d;
}

BiPolynomial BiPolynomial::conj() const {
  BiPolynomial out(n_, center_);
  for (const auto& [key, c] : terms_) out.terms_.emplace(BiExponent{key.second, key.first}, c.conj());
  return out;
}

bool BiPolynomial::is_hermitian() const {
  for (const auto& [key, c] : terms_) {
    auto it = terms_.find(BiExponent{key.second, key.first});
    if (it == terms_.end() || it->second != c.conj()) return false;
  }
  return true;
}

ComplexRational BiPolynomial::eval(const QPoint& z, const QPoint& w) const {
  QPoint u = shift(z, center_);
  QPoint v = shift(w, center_);
  for (auto& c : v) c = c.conj();
  unsigned m = max_single_exponent(terms_);
  auto zt = power_table(u, m);
  auto wt = power_table(v, m);
  ComplexRational sum(0);
  for (const auto& [key, c] : terms_) {
    sum += c * monomial_from_table(key.first, zt) * monomial_from_table(key.second, wt);
  }
  return sum;
}

std::complex<double> BiPolynomial::eval(const CPoint& z, const CPoint& w) const {
  CPoint u = shift(z, center_);
  CPoint v = shift(w, center_);
  for (auto& c : v) c = std::conj(c);
  unsigned m = max_single_exponent(terms_);
  auto zt = power_table(u, m);
  auto wt = power_table(v, m);
  std::complex<double> sum(0.0);
  for (const auto& [key, c] : terms_) {
    sum += c.to_complex() * monomial_from_table(key.first, zt) * monomial_from_table(key.second, wt);
  }
  return sum;
}

BiPolynomial BiPolynomial::recentered(const QPoint& new_center) const {
  check_point(new_center, n_);
  // z - p = (z - q) + (q - p)
  std::vector<BiPolynomial> lin(n_), lin_bar(n_);
  for (std::size_t j = 0; j < n_; ++j) {
    ComplexRational s = new_center[j] - center_[j];
    lin[j] = BiPolynomial(n_, new_center);
    lin[j].add_term(MultiIndex::unit(n_, j), MultiIndex(n_), 1);
    lin[j].add_term(MultiIndex(n_), MultiIndex(n_), s);
    lin_bar[j] = BiPolynomial(n_, new_center);
    lin_bar[j].add_term(MultiIndex(n_), MultiIndex::unit(n_, j), 1);
    lin_bar[j].add_term(MultiIndex(n_), MultiIndex(n_), s.conj());
  }
  unsigned m = max_single_exponent(terms_);
  std::vector<std::vector<BiPolynomial>> pz(n_), pw(n_);
  for (std::size_t j = 0; j < n_; ++j) {
    pz[j].push_back(BiPolynomial::constant(n_, 1));
    pz[j].back().center_ = new_center;
    pw[j].push_back(pz[j].back());
    for (unsigned e = 1; e <= m; ++e) {
      pz[j].push_back(pz[j].back() * lin[j]);
      pw[j].push_back(pw[j].back() * lin_bar[j]);
    }
  }
  BiPolynomial out(n_, new_center);
  for (const auto& [key, c] : terms_) {
    BiPolynomial term = BiPolynomial::constant(n_, c);
    term.center_ = new_center;
    for (std::size_t j = 0; j < n_; ++j) {
      if (key.first[j]) term = term * pz[j][key.first[j]];
      if (key.second[j]) term = term * pw[j][key.second[j]];
    }
    out += term;
  }
  return out;
}

void BiPolynomial::check_compatible(const BiPolynomial& o) const {
  if (n_ != o.n_) throw DimensionMismatch("polynomials in different numbers of variables");
  if (center_ != o.center_) throw InvalidInput("polynomials expanded around different centers");
}

BiPolynomial& BiPolynomial::operator+=(const BiPolynomial& o) {
  check_compatible(o);
  for (const auto& [key, c] : o.terms_) add_term(key.first, key.second, c);
  return *this;
}

BiPolynomial& BiPolynomial::operator-=(const BiPolynomial& o) {
  check_compatible(o);
  for (const auto& [key, c] : o.terms_) add_term(key.first, key.second, -c);
  return *this;
}

BiPolynomial& BiPolynomial::operator*=(const ComplexRational& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [key, c] : terms_) c *= s;
  return *this;
}

BiPolynomial operator*(const BiPolynomial& a, const BiPolynomial& b) {
  a.check_compatible(b);
  BiPolynomial out(a.n_, a.center_);
  for (const auto& [ka, ca] : a.terms_) {
    for (const auto& [kb, cb] : b.terms_) {
      out.add_term(ka.first + kb.first, ka.second + kb.second, ca * cb);
    }
  }
  return out;
}

bool operator==(const BiPolynomial& a, const BiPolynomial& b) {
  return a.n_ == b.n_ && a.center_ == b.center_ && a.terms_ == b.terms_;
}

BiPolynomial pow(const BiPolynomial& base, unsigned exponent) {
  BiPolynomial result(base.dim(), base.center());
  result.add_term(MultiIndex(base.dim()), MultiIndex(base.dim()), 1);
  for (unsigned e = 0; e < exponent; ++e) result = result * base;
  return result;
}

// ---------------------------------------------------------------------------
// HermitianPolynomial

HermitianPolynomial::HermitianPolynomial(BiPolynomial poly) : poly_(std::move(poly)) {
  for (const auto& [key, c] : poly_.terms()) {
    ComplexRational mirror = poly_.coefficient(key.second, key.first);
    if (mirror != c.conj()) {
      throw NotHermitian("coefficient of " + to_string(key.first) + "," + to_string(key.second) + " is " +
                         to_string(c) + " but its mirror is " + to_string(mirror));
    }
  }
}

HermitianPolynomial::HermitianPolynomial(BiPolynomial poly, bool validated)
    : poly_(std::move(poly)), validated_(validated) {}

HermitianPolynomial HermitianPolynomial::unchecked(BiPolynomial poly) {
  return HermitianPolynomial(std::move(poly), false);
}

HermitianPolynomial HermitianPolynomial::recentered(const QPoint& new_center) const {
  return HermitianPolynomial(poly_.recentered(new_center), validated_);
}

ComplexRational eval_hermitian(const HermitianPolynomial& rho, const QPoint& z, const QPoint& w) {
  if (z.size() != rho.dim() || w.size() != rho.dim()) throw DimensionMismatch("eval_hermitian: dimension mismatch");
  return rho.poly().eval(z, w);
}

std::complex<double> eval_hermitian(const HermitianPolynomial& rho, const CPoint& z, const CPoint& w) {
  if (z.size() != rho.dim() || w.size() != rho.dim()) throw DimensionMismatch("eval_hermitian: dimension mismatch");
  return rho.poly().eval(z, w);
}

// ---------------------------------------------------------------------------
// HoloPolynomial

HoloPolynomial::HoloPolynomial(std::size_t n) : n_(n), center_(zero_point(n)) {}

HoloPolynomial::HoloPolynomial(std::size_t n, QPoint center) : n_(n), center_(std::move(center)) {
  check_point(center_, n_);
}

unsigned HoloPolynomial::degree() const {
  unsigned d = 0;
  for (const auto& [a, c] : terms_) d = std::max(d, a.degree());
  return d;
}

void HoloPolynomial::add_term(const MultiIndex& alpha, const ComplexRational& c) {
  if (alpha.size() != n_) throw DimensionMismatch("exponent length differs from n");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(alpha, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

ComplexRational HoloPolynomial::coefficient(const MultiIndex& alpha) const {
  auto it = terms_.find(alpha);
  return it == terms_.end() ? ComplexRational(0) : it->second;
}

ComplexRational HoloPolynomial::eval(const QPoint& z) const {
  QPoint u = shift(z, center_);
  ComplexRational sum(0);
  for (const auto& [a, c] : terms_) sum += c * monomial_value(a, u);
  return sum;
}

std::complex<double> HoloPolynomial::eval(const CPoint& z) const {
  CPoint u = shift(z, center_);
  std::complex<double> sum(0.0);
  for (const auto& [a, c] : terms_) {
    std::complex<double> m = c.to_complex();
    for (std::size_t k = 0; k < n_; ++k) {
      for (unsigned e = 0; e < a[k]; ++e) m *= u[k];
    }
    sum += m;
  }
  return sum;
}

BiPolynomial HoloPolynomial::as_bi() const {
  BiPolynomial out(n_, center_);
  for (const auto& [a, c] : terms_) out.add_term(a, MultiIndex(n_), c);
  return out;
}

BiPolynomial HoloPolynomial::norm_squared() const {
  BiPolynomial out(n_, center_);
  for (const auto& [a, ca] : terms_) {
    for (const auto& [b, cb] : terms_) out.add_term(a, b, ca * cb.conj());
  }
  return out;
}

BiPolynomial HoloPolynomial::twice_real_part() const {
  BiPolynomial f = as_bi();
  return f + f.conj();
}

HoloPolynomial HoloPolynomial::linear_substitute(const std::vector<std::vector<ComplexRational>>& matrix) const {
  if (matrix.size() != n_) throw DimensionMismatch("substitution matrix must be n x n");
  for (const auto& row : matrix) {
    if (row.size() != n_) throw DimensionMismatch("substitution matrix must be n x n");
  }
  std::vector<HoloPolynomial> lin(n_, HoloPolynomial(n_, center_));
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) lin[i].add_term(MultiIndex::unit(n_, j), matrix[i][j]);
  }
  HoloPolynomial one(n_, center_);
  one.add_term(MultiIndex(n_), 1);
  HoloPolynomial out(n_, center_);
  for (const auto& [a, c] : terms_) {
    HoloPolynomial term = one * c;
    for (std::size_t i = 0; i < n_; ++i) {
      for (unsigned e = 0; e < a[i]; ++e) term = term * lin[i];
    }
    out += term;
  }
  return out;
}

HoloPolynomial& HoloPolynomial::operator+=(const HoloPolynomial& o) {
  if (n_ != o.n_ || center_ != o.center_) throw DimensionMismatch("incompatible holomorphic polynomials");
  for (const auto& [a, c] : o.terms_) add_term(a, c);
  return *this;
}

HoloPolynomial& HoloPolynomial::operator-=(const HoloPolynomial& o) {
  if (n_ != o.n_ || center_ != o.center_) throw DimensionMismatch("incompatible holomorphic polynomials");
  for (const auto& [a, c] : o.terms_) add_term(a, -c);
  return *this;
}

HoloPolynomial& HoloPolynomial::operator*=(const ComplexRational& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [a, c] : terms_) c *= s;
  return *this;
}

HoloPolynomial operator*(const HoloPolynomial& a, const HoloPolynomial& b) {
  if (a.n_ != b.n_ || a.center_ != b.center_) throw DimensionMismatch("incompatible holomorphic polynomials");
  HoloPolynomial out(a.n_, a.center_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) out.add_term(ea + eb, ca * cb);
  }
  return out;
}

bool operator==(const HoloPolynomial& a, const HoloPolynomial& b) {
  return a.n_ == b.n_ && a.center_ == b.center_ && a.terms_ == b.terms_;
}

}  // namespace germscan
