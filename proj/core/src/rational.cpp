#include "germscan/rational.hpp"

#include <cmath>

#include "germscan/errors.hpp"

namespace germscan {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

std::string_view strip_sign(std::string_view s, bool& negative) {
  negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  return s;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = trim(text);
  bool negative = false;
  std::string_view body = strip_sign(s, negative);
  Rational out;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    std::string_view num = body.substr(0, slash);
    std::string_view den = body.substr(slash + 1);
    bool den_negative = false;
    den = strip_sign(den, den_negative);
    if (!all_digits(num) || !all_digits(den)) {
      throw InvalidInput("malformed rational literal '" + std::string(text) + "'");
    }
    mpz_class n(std::string(num), 10);
    mpz_class d(std::string(den), 10);
    if (d == 0) throw InvalidInput("zero denominator in '" + std::string(text) + "'");
    out = Rational(n, d);
    if (den_negative) negative = !negative;
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    std::string_view ip = body.substr(0, dot);
    std::string_view fp = body.substr(dot + 1);
    if ((ip.empty() && fp.empty()) || (!ip.empty() && !all_digits(ip)) ||
        (!fp.empty() && !all_digits(fp))) {
      throw InvalidInput("malformed decimal literal '" + std::string(text) + "'");
    }
    std::string digits = std::string(ip) + std::string(fp);
    mpz_class n(digits.empty() ? std::string("0") : digits, 10);
    mpz_class d;
    mpz_ui_pow_ui(d.get_mpz_t(), 10, fp.size());
    out = Rational(n, d);
  } else {
    if (!all_digits(body)) throw InvalidInput("malformed rational literal '" + std::string(text) + "'");
    out = Rational(mpz_class(std::string(body), 10));
  }
  out.canonicalize();
  if (negative) out = -out;
  return out;
}

std::string to_string(const Rational& q) { return q.get_str(10); }

Rational rational_from_double(double value) {
  if (!std::isfinite(value)) throw InvalidInput("non-finite value has no rational representation");
  Rational out(value);  // mpq_set_d is exact
  out.canonicalize();
  return out;
}

ComplexRational::ComplexRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {
  re_.canonicalize();
  im_.canonicalize();
}

ComplexRational& ComplexRational::operator+=(const ComplexRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

ComplexRational& ComplexRational::operator-=(const ComplexRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

ComplexRational& ComplexRational::operator*=(const ComplexRational& o) {
  Rational re = re_ * o.re_ - im_ * o.im_;
  Rational im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

ComplexRational& ComplexRational::operator/=(const ComplexRational& o) {
  Rational den = o.norm();
  if (sgn(den) == 0) throw InvalidInput("division by zero");
  Rational re = (re_ * o.re_ + im_ * o.im_) / den;
  Rational im = (im_ * o.re_ - re_ * o.im_) / den;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

ComplexRational pow(const ComplexRational& base, unsigned exponent) {
  ComplexRational result(1);
  ComplexRational b = base;
  while (exponent != 0) {
    if (exponent & 1U) result *= b;
    exponent >>= 1U;
    if (exponent != 0) b *= b;
  }
  return result;
}

std::string to_string(const ComplexRational& z) {
  if (z.is_real()) return to_string(z.re());
  return to_string(z.re()) + (sgn(z.im()) < 0 ? "" : "+") + to_string(z.im()) + "i";
}

ComplexRational exact_from_complex(std::complex<double> z) {
  return {rational_from_double(z.real()), rational_from_double(z.imag())};
}

CPoint to_float(const QPoint& p) {
  CPoint out;
  out.reserve(p.size());
  for (const auto& c : p) out.push_back(c.to_complex());
  return out;
}

QPoint to_exact(const CPoint& p) {
  QPoint out;
  out.reserve(p.size());
  for (const auto& c : p) out.push_back(exact_from_complex(c));
  return out;
}

double distance(const CPoint& a, const CPoint& b) {
  if (a.size() != b.size()) throw DimensionMismatch("points of different dimension");
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += std::norm(a[k] - b[k]);
  return std::sqrt(s);
}

}  // namespace germscan
