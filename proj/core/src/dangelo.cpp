#include "germscan/dangelo.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace germscan {

namespace {

Rational ratio_of(unsigned num, unsigned den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational rational_pow(const Rational& base, unsigned e) {
  Rational out = 1;
  for (unsigned k = 0; k < e; ++k) out *= base;
  return out;
}

}  // namespace

BiPolynomial HoloDecomposition::reassembled() const {
  BiPolynomial sum = h.twice_real_part();
  for (const auto& [beta, fb] : f) sum += fb.norm_squared();
  for (const auto& [beta, gb] : g) sum -= gb.norm_squared();
  return sum;
}

HoloDecomposition holo_decompose(const HermitianPolynomial& rho, const Rational& t, std::vector<Rational> delta) {
  const std::size_t n = rho.dim();
  if (!(t > 0 && t < 1)) throw InvalidInput("decomposition parameter t must lie in (0, 1)");
  if (delta.empty()) delta.assign(n, Rational(1));
  if (delta.size() != n) throw DimensionMismatch("delta must have one entry per variable");
  for (const auto& d : delta) {
    if (d <= 0) throw InvalidInput("delta entries must be positive");
  }
  const MultiIndex zero(n);
  if (!rho.poly().coefficient(zero, zero).is_zero()) {
    throw InvalidInput("rho must vanish at its center to be decomposed");
  }

  HoloDecomposition dec;
  dec.center = rho.center();
  dec.t = t;
  dec.delta = delta;
  dec.h = HoloPolynomial(n, rho.center());

  // scale(beta) = (t delta)^beta
  auto scale = [&](const MultiIndex& beta) {
    Rational s = 1;
    for (std::size_t j = 0; j < n; ++j) s *= rational_pow(Rational(t * delta[j]), beta[j]);
    return s;
  };

  for (const auto& [key, c] : rho.terms()) {
    const auto& [alpha, beta] = key;
    if (beta.is_zero()) {
      dec.h.add_term(alpha, c * ComplexRational(4));
      continue;
    }
    if (!dec.f.count(beta)) {
      const Rational s = scale(beta);
      const Rational inv = 1 / s;
      HoloPolynomial fb(n, rho.center()), gb(n, rho.center());
      fb.add_term(beta, ComplexRational(inv));
      gb.add_term(beta, Rational(-inv));
      dec.f.emplace(beta, std::move(fb));
      dec.g.emplace(beta, std::move(gb));
    }
    if (alpha.is_zero()) continue;
    const ComplexRational scaled = c * ComplexRational(scale(beta));
    dec.f.at(beta).add_term(alpha, scaled);
    dec.g.at(beta).add_term(alpha, scaled);
  }

  if (!decomposition_identity_holds(rho, dec)) {
    throw Error("holomorphic decomposition failed its exact identity check");
  }
  return dec;
}

bool decomposition_identity_holds(const HermitianPolynomial& rho, const HoloDecomposition& dec) {
  return dec.reassembled() == rho.poly() * ComplexRational(4);
}

// ---------------------------------------------------------------------------

std::vector<ComplexRational> curve_coefficient_list(unsigned budget) {
  static const std::vector<ComplexRational> list = {
      ComplexRational(1),     ComplexRational(-1),    ComplexRational(0, 1),  ComplexRational(0, -1),
      ComplexRational(2),     ComplexRational(-2),    ComplexRational(1, 1),  ComplexRational(1, -1),
      ComplexRational(Rational(1, 2)), ComplexRational(Rational(-1, 2)), ComplexRational(3), ComplexRational(-3),
  };
  if (budget == 0 || budget > list.size()) {
    throw InvalidInput("coefficient budget must lie in [1, " + std::to_string(list.size()) + "]");
  }
  return {list.begin(), list.begin() + budget};
}

namespace {

struct CurveOrder {
  bool infinite = false;
  unsigned order = 0;
};

// Vanishing order of rho o gamma for gamma_j = p_j + c_j zeta^{a_j}, rho centered at p.
CurveOrder monomial_curve_order(const HermitianPolynomial& rho, const std::vector<ComplexRational>& coef,
                                const std::vector<unsigned>& expo) {
  const std::size_t n = rho.dim();
  std::map<std::pair<unsigned, unsigned>, ComplexRational> series;
  for (const auto& [key, c] : rho.terms()) {
    const auto& [alpha, beta] = key;
    ComplexRational value = c;
    unsigned da = 0, db = 0;
    bool vanishes = false;
    for (std::size_t j = 0; j < n && !vanishes; ++j) {
      if (alpha[j] + beta[j] == 0) continue;
      if (coef[j].is_zero()) {
        vanishes = true;
        break;
      }
      value *= pow(coef[j], alpha[j]) * pow(coef[j].conj(), beta[j]);
      da += expo[j] * alpha[j];
      db += expo[j] * beta[j];
    }
    if (vanishes) continue;
    series[{da, db}] += value;
  }
  CurveOrder out;
  out.infinite = true;
  for (const auto& [deg, c] : series) {
    if (c.is_zero()) continue;
    const unsigned total = deg.first + deg.second;
    if (out.infinite || total < out.order) out.order = total;
    out.infinite = false;
  }
  return out;
}

}  // namespace

TypeBound type_lower_bound(const HermitianPolynomial& rho, const QPoint& p, const TypeOptions& options) {
  const std::size_t n = rho.dim();
  if (p.size() != n) throw DimensionMismatch("point dimension does not match rho");
  if (!eval_hermitian(rho, p, p).is_zero()) throw NotOnVariety("type bound requires rho(p, conj p) = 0 exactly");
  if (options.max_curve_degree == 0) throw InvalidInput("max curve degree must be positive");
  for (const auto& user : options.user_curves) {
    if (user.anchor() != p) throw AnchorMismatch("user curve is not anchored at the point");
  }
  const auto coefficients = curve_coefficient_list(options.coefficient_budget);
  const HermitianPolynomial local = rho.center() == p ? rho : rho.recentered(p);

  TypeBound bound;
  bound.value = 0;

  auto consider = [&](bool infinite, const Rational& ratio, const CurveJet& gamma) {
    ++bound.curves_examined;
    if (bound.infinite) return;
    if (infinite) {
      bound.infinite = true;
      bound.witness = gamma;
      return;
    }
    if (!bound.witness || ratio > bound.value) {
      bound.value = ratio;
      bound.witness = gamma;
    }
  };

  // Each component either stays constant (choice 0) or is c zeta^a.
  const unsigned per_component = 1 + static_cast<unsigned>(coefficients.size()) * options.max_curve_degree;
  std::vector<unsigned> choice(n, 0);
  std::vector<ComplexRational> coef(n);
  std::vector<unsigned> expo(n);
  while (!bound.infinite) {
    std::size_t k = 0;
    while (k < n && ++choice[k] == per_component) choice[k++] = 0;
    if (k == n) break;

    unsigned min_a = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (choice[j] == 0) {
        coef[j] = 0;
        expo[j] = 0;
        continue;
      }
      const unsigned c = choice[j] - 1;
      coef[j] = coefficients[c / options.max_curve_degree];
      expo[j] = 1 + c % options.max_curve_degree;
      if (min_a == 0 || expo[j] < min_a) min_a = expo[j];
    }
    const CurveOrder order = monomial_curve_order(local, coef, expo);
    consider(order.infinite, ratio_of(order.order, min_a), CurveJet::monomial(p, coef, expo));
  }

  for (const auto& user : options.user_curves) {
    if (bound.infinite) break;
    const unsigned nu = curve_order(user);
    // User curves are polynomial curves: compose at the order that keeps every term.
    CurveJet jet(user.anchor(), user.components(), std::max(user.truncation(), exact_truncation(local, user)));
    const VanishingOrder v = vanishing_order(compose_with_curve(local, jet));
    consider(v.infinite, ratio_of(v.value, nu), user);
  }
  return bound;
}

// ---------------------------------------------------------------------------

MonomialIdeal::MonomialIdeal(std::size_t n, std::vector<MultiIndex> generators) : n_(n) {
  if (n == 0) throw InvalidInput("ideal needs at least one variable");
  for (const auto& g : generators) {
    if (g.size() != n) throw DimensionMismatch("generator length differs from the number of variables");
    if (g.is_zero()) throw InvalidInput("the unit ideal is not supported");
  }
  std::sort(generators.begin(), generators.end(), [](const MultiIndex& a, const MultiIndex& b) {
    return a.degree() != b.degree() ? a.degree() < b.degree() : a < b;
  });
  for (const auto& g : generators) {
    bool redundant = false;
    for (const auto& kept : gens_) {
      if (kept.divides(g)) {
        redundant = true;
        break;
      }
    }
    if (!redundant) gens_.push_back(g);
  }
  std::sort(gens_.begin(), gens_.end());
}

MonomialIdeal MonomialIdeal::maximal_power(std::size_t n, unsigned k) {
  if (k == 0) throw InvalidInput("the unit ideal is not supported");
  return MonomialIdeal(n, monomials_of_degree(n, k));
}

bool MonomialIdeal::contains(const MultiIndex& m) const {
  if (m.size() != n_) throw DimensionMismatch("monomial length differs from the number of variables");
  return std::any_of(gens_.begin(), gens_.end(), [&](const MultiIndex& g) { return g.divides(m); });
}

namespace {

// Exponent of the pure power of z_j among the generators, 0 if there is none.
unsigned pure_power(const std::vector<MultiIndex>& gens, std::size_t j) {
  for (const auto& g : gens) {
    if (g.degree() == g[j]) return g[j];
  }
  return 0;
}

}  // namespace

bool MonomialIdeal::zero_dimensional() const {
  for (std::size_t j = 0; j < n_; ++j) {
    if (pure_power(gens_, j) == 0) return false;
  }
  return true;
}

unsigned MonomialIdeal::max_generator_degree() const {
  unsigned d = 0;
  for (const auto& g : gens_) d = std::max(d, g.degree());
  return d;
}

std::optional<unsigned> ideal_K(const MonomialIdeal& ideal) {
  if (!ideal.zero_dimensional()) return std::nullopt;
  const std::size_t n = ideal.dim();
  unsigned bound = 1;
  for (std::size_t j = 0; j < n; ++j) bound += pure_power(ideal.generators(), j) - 1;
  for (unsigned k = 1; k <= bound; ++k) {
    const auto monomials = monomials_of_degree(n, k);
    if (std::all_of(monomials.begin(), monomials.end(), [&](const MultiIndex& m) { return ideal.contains(m); })) {
      return k;
    }
  }
  return bound;
}

std::optional<unsigned long> ideal_D(const MonomialIdeal& ideal) {
  if (!ideal.zero_dimensional()) return std::nullopt;
  const std::size_t n = ideal.dim();
  std::vector<unsigned> limits(n);
  for (std::size_t j = 0; j < n; ++j) limits[j] = pure_power(ideal.generators(), j);
  // Every standard monomial lies in the box prod [0, limits_j).
  MultiIndex m(n);
  unsigned long count = 0;
  while (true) {
    if (!ideal.contains(m)) ++count;
    std::size_t k = 0;
    while (k < n && ++m[k] == limits[k]) m[k++] = 0;
    if (k == n) break;
  }
  return count;
}

std::optional<Rational> tau_star_monomial(const MonomialIdeal& ideal, unsigned weight_bound) {
  if (!ideal.zero_dimensional()) return std::nullopt;
  const std::size_t n = ideal.dim();
  const unsigned A = weight_bound == 0 ? 2 * ideal.max_generator_degree() : weight_bound;
  std::vector<unsigned> a(n, 1);
  Rational best = 0;
  while (true) {
    unsigned min_a = *std::min_element(a.begin(), a.end());
    unsigned min_pair = 0;
    bool first = true;
    for (const auto& g : ideal.generators()) {
      unsigned pairing = 0;
      for (std::size_t j = 0; j < n; ++j) pairing += a[j] * g[j];
      if (first || pairing < min_pair) min_pair = pairing;
      first = false;
    }
    const Rational ratio = ratio_of(min_pair, min_a);
    if (ratio > best) best = ratio;
    std::size_t k = 0;
    while (k < n && ++a[k] > A) a[k++] = 1;
    if (k == n) break;
  }
  return best;
}

InequalityChainReport check_inequality_chain(const MonomialIdeal& ideal, unsigned weight_bound) {
  InequalityChainReport r;
  r.tau_star = tau_star_monomial(ideal, weight_bound);
  r.K = ideal_K(ideal);
  r.D = ideal_D(ideal);
  r.all_finite = r.tau_star && r.K && r.D;
  r.all_infinite = !r.tau_star && !r.K && !r.D;
  if (r.all_finite) {
    r.holds = *r.tau_star <= Rational(*r.K) && static_cast<unsigned long>(*r.K) <= *r.D;
  } else {
    r.holds = r.all_infinite;
  }
  return r;
}

std::vector<HoloPolynomial> decomposition_ideal_generators(const HoloDecomposition& dec,
                                                           const std::vector<std::vector<ComplexRational>>& unitary) {
  const std::size_t m = dec.f.size();
  if (unitary.size() != m) throw DimensionMismatch("unitary size must match the number of f components");
  for (const auto& row : unitary) {
    if (row.size() != m) throw DimensionMismatch("unitary must be square");
  }
  // U U* = I exactly.
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      ComplexRational s = 0;
      for (std::size_t k = 0; k < m; ++k) s += unitary[i][k] * unitary[j][k].conj();
      if (s != ComplexRational(i == j ? 1 : 0)) throw InvalidInput("matrix is not exactly unitary");
    }
  }
  std::vector<HoloPolynomial> gens;
  if (!dec.h.is_zero()) gens.push_back(dec.h);
  std::vector<const HoloPolynomial*> g;
  for (const auto& [beta, gb] : dec.g) g.push_back(&gb);
  std::size_t row = 0;
  for (const auto& [beta, fb] : dec.f) {
    HoloPolynomial gen = fb;
    for (std::size_t s = 0; s < m; ++s) gen -= *g[s] * unitary[row][s];
    if (!gen.is_zero()) gens.push_back(std::move(gen));
    ++row;
  }
  return gens;
}

std::optional<MonomialIdeal> as_monomial_ideal(
    const std::vector<HoloPolynomial>& generators,
    const std::optional<std::vector<std::vector<ComplexRational>>>& change_of_coordinates) {
  if (generators.empty()) throw InvalidInput("no generators");
  const std::size_t n = generators.front().dim();
  std::vector<HoloPolynomial> polys;
  for (const auto& g : generators) {
    if (g.dim() != n) throw DimensionMismatch("generators live in different dimensions");
    polys.push_back(change_of_coordinates ? g.linear_substitute(*change_of_coordinates) : g);
  }

  std::vector<MultiIndex> basis;
  for (const auto& p : polys) {
    for (const auto& [alpha, c] : p.terms()) basis.push_back(alpha);
  }
  std::sort(basis.begin(), basis.end());
  basis.erase(std::unique(basis.begin(), basis.end()), basis.end());

  std::vector<std::vector<ComplexRational>> rows;
  for (const auto& p : polys) {
    std::vector<ComplexRational> row(basis.size());
    for (std::size_t k = 0; k < basis.size(); ++k) row[k] = p.coefficient(basis[k]);
    rows.push_back(std::move(row));
  }

  // Exact reduced row echelon form.
  std::size_t rank = 0;
  for (std::size_t col = 0; col < basis.size() && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][col].is_zero()) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[rank]);
    const ComplexRational inv = ComplexRational(1) / rows[rank][col];
    for (auto& x : rows[rank]) x *= inv;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][col].is_zero()) continue;
      const ComplexRational factor = rows[r][col];
      for (std::size_t k = 0; k < basis.size(); ++k) rows[r][k] -= factor * rows[rank][k];
    }
    ++rank;
  }

  std::vector<MultiIndex> monomials;
  for (std::size_t r = 0; r < rank; ++r) {
    std::size_t nonzero = 0, where = 0;
    for (std::size_t k = 0; k < basis.size(); ++k) {
      if (!rows[r][k].is_zero()) {
        ++nonzero;
        where = k;
      }
    }
    if (nonzero != 1) return std::nullopt;
    monomials.push_back(basis[where]);
  }
  return MonomialIdeal(n, std::move(monomials));
}

// ---------------------------------------------------------------------------

namespace {

std::string describe_mismatch(std::size_t a, std::size_t b, std::complex<double> f, std::complex<double> g) {
  std::ostringstream os;
  os.precision(17);
  os << "Gram matrices differ at (" << a << ", " << b << "): <F_a, F_b> = " << f << ", <G_a, G_b> = " << g;
  return os.str();
}

// Columns r..m-1 of a unitary whose first r columns span the range of Q (m x r, full rank).
Eigen::MatrixXcd orthogonal_complement(const Eigen::MatrixXcd& Q) {
  const Eigen::Index m = Q.rows(), r = Q.cols();
  if (r == 0) return Eigen::MatrixXcd::Identity(m, m);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(Q);
  Eigen::MatrixXcd full = qr.householderQ() * Eigen::MatrixXcd::Identity(m, m);
  return full.rightCols(m - r);
}

}  // namespace

GramMismatch::GramMismatch(std::size_t first_, std::size_t second_, std::complex<double> f,
                           std::complex<double> g)
    : Error(describe_mismatch(first_, second_, f, g)), first(first_), second(second_), f_inner(f), g_inner(g) {}

FiniteIsometry build_matching_isometry(const std::vector<Eigen::VectorXcd>& F, const std::vector<Eigen::VectorXcd>& G,
                                       double tol) {
  if (F.size() != G.size()) throw DimensionMismatch("families must share their index set");
  if (!(tol > 0)) throw InvalidInput("tolerance must be positive");
  Eigen::Index m = 0;
  for (const auto& v : F) m = std::max(m, v.size());
  for (const auto& v : G) m = std::max(m, v.size());
  const std::size_t k = F.size();
  if (m == 0) throw InvalidInput("families live in a zero-dimensional space");

  auto padded = [m](const Eigen::VectorXcd& v) {
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(m);
    out.head(v.size()) = v;
    return out;
  };
  std::vector<Eigen::VectorXcd> f, g;
  for (std::size_t a = 0; a < k; ++a) {
    f.push_back(padded(F[a]));
    g.push_back(padded(G[a]));
  }

  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a; b < k; ++b) {
      const std::complex<double> fi = f[b].dot(f[a]);  // <f_a, f_b> = sum f_a conj(f_b)
      const std::complex<double> gi = g[b].dot(g[a]);
      const double scale = std::max({1.0, f[a].norm() * f[b].norm(), g[a].norm() * g[b].norm()});
      if (std::abs(fi - gi) > tol * scale) throw GramMismatch(a, b, fi, gi);
    }
  }

  // Greedy maximal independent subfamily of G.
  std::vector<std::size_t> chosen;
  std::vector<Eigen::VectorXcd> ortho;
  for (std::size_t a = 0; a < k && static_cast<Eigen::Index>(chosen.size()) < m; ++a) {
    Eigen::VectorXcd r = g[a];
    for (const auto& q : ortho) r -= q.dot(r) * q;
    for (const auto& q : ortho) r -= q.dot(r) * q;
    const double norm_a = g[a].norm();
    if (norm_a == 0.0 || r.norm() <= 1e-8 * norm_a) continue;
    chosen.push_back(a);
    ortho.push_back(r / r.norm());
  }

  const Eigen::Index r = static_cast<Eigen::Index>(chosen.size());
  Eigen::MatrixXcd GS(m, r), FS(m, r);
  for (Eigen::Index c = 0; c < r; ++c) {
    GS.col(c) = g[chosen[c]];
    FS.col(c) = f[chosen[c]];
  }
  Eigen::MatrixXcd QG(m, r), QF(m, r);
  if (r > 0) {
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(GS);
    QG = qr.householderQ() * Eigen::MatrixXcd::Identity(m, r);
    Eigen::MatrixXcd R = qr.matrixQR().topRows(r).triangularView<Eigen::Upper>();
    QF = R.triangularView<Eigen::Upper>().solve<Eigen::OnTheRight>(FS);
  }
  Eigen::MatrixXcd left(m, m), right(m, m);
  left << QF, orthogonal_complement(QF);
  right << QG, orthogonal_complement(QG);

  FiniteIsometry iso;
  iso.matrix = left * right.adjoint();

  const double unitarity = (iso.matrix.adjoint() * iso.matrix - Eigen::MatrixXcd::Identity(m, m)).norm();
  if (unitarity > tol) {
    throw MatchingFailure("constructed map misses unitarity by " + std::to_string(unitarity));
  }
  for (std::size_t a = 0; a < k; ++a) {
    const double err = (iso.matrix * g[a] - f[a]).norm();
    if (err > tol * (1.0 + f[a].norm())) {
      throw MatchingFailure("constructed map misses member " + std::to_string(a) + " by " + std::to_string(err));
    }
  }
  return iso;
}

}  // namespace germscan
