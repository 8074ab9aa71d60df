#include "germscan/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <random>
#include <sstream>
#include <thread>

#include "germscan/errors.hpp"
#include "germscan/float_eval.hpp"
#include "germscan/levenberg_marquardt.hpp"

namespace germscan {

// ---------------------------------------------------------------------------
// Grid indexing

template <typename Point>
std::size_t BasicGrid<Point>::expected_size() const {
  std::size_t s = 1;
  for (unsigned q = 0; q < d; ++q) s *= kappa + 1;
  return s;
}

template <typename Point>
std::vector<unsigned> BasicGrid<Point>::nu_of(std::size_t i) const {
  std::vector<unsigned> nu(d);
  for (unsigned q = d; q-- > 0;) {
    nu[q] = static_cast<unsigned>(i % (kappa + 1)) + 1;
    i /= kappa + 1;
  }
  return nu;
}

template <typename Point>
std::size_t BasicGrid<Point>::index_of(const std::vector<unsigned>& nu) const {
  std::size_t i = 0;
  for (unsigned q = 0; q < d; ++q) i = i * (kappa + 1) + (nu.at(q) - 1);
  return i;
}

template struct BasicGrid<QPoint>;
template struct BasicGrid<CPoint>;

template <typename Point>
BasicGrid<Point> restrict_grid(const BasicGrid<Point>& g, unsigned sub_kappa) {
  if (sub_kappa == 0 || sub_kappa > g.kappa) throw InvalidInput("restriction kappa must lie in [1, kappa]");
  BasicGrid<Point> out{g.d, sub_kappa, g.lambda, {}};
  for (std::size_t i = 0; i < out.expected_size(); ++i) out.points.push_back(g.points.at(g.index_of(out.nu_of(i))));
  return out;
}

template ExactGrid restrict_grid(const ExactGrid&, unsigned);
template FloatGrid restrict_grid(const FloatGrid&, unsigned);

std::vector<std::vector<unsigned>> index_tuples(unsigned d, unsigned n) {
  std::vector<std::vector<unsigned>> out;
  if (d == 0 || d > n) return out;
  std::vector<unsigned> cur(d);
  for (unsigned q = 0; q < d; ++q) cur[q] = q;
  while (true) {
    out.push_back(cur);
    int q = static_cast<int>(d) - 1;
    while (q >= 0 && cur[q] == n - d + q) --q;
    if (q < 0) break;
    ++cur[q];
    for (unsigned r = q + 1; r < d; ++r) cur[r] = cur[r - 1] + 1;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Verification

namespace {

template <typename Point>
void check_structure(const HermitianPolynomial& rho, const BasicGrid<Point>& g) {
  const std::size_t n = rho.dim();
  if (g.d < 1 || g.d >= n) throw StructuralError("grid base dimension must satisfy 1 <= d < n");
  if (g.kappa < 1) throw StructuralError("kappa must be positive");
  if (g.lambda.size() != g.d) throw StructuralError("lambda must have d entries");
  for (unsigned q = 0; q < g.d; ++q) {
    if (g.lambda[q] >= n || (q > 0 && g.lambda[q] <= g.lambda[q - 1])) {
      throw StructuralError("lambda must be strictly increasing coordinate indices below n");
    }
  }
  if (g.points.size() != g.expected_size()) {
    throw StructuralError("grid has " + std::to_string(g.points.size()) + " points, expected " +
                          std::to_string(g.expected_size()));
  }
  for (const auto& pt : g.points) {
    if (pt.size() != n) throw StructuralError("grid point dimension differs from n");
  }
  for (std::size_t i = 0; i < g.points.size(); ++i) {
    for (std::size_t j = i + 1; j < g.points.size(); ++j) {
      if (g.points[i] == g.points[j]) {
        throw StructuralError("grid points " + std::to_string(i) + " and " + std::to_string(j) + " coincide");
      }
    }
  }
}

template <typename Point>
void check_condition_b(const BasicGrid<Point>& g, GridReport& report) {
  for (std::size_t i = 0; i < g.points.size(); ++i) {
    auto nu_i = g.nu_of(i);
    for (std::size_t j = i + 1; j < g.points.size(); ++j) {
      auto nu_j = g.nu_of(j);
      for (unsigned q = 0; q < g.d; ++q) {
        bool same_index = nu_i[q] == nu_j[q];
        bool same_coord = g.points[i][g.lambda[q]] == g.points[j][g.lambda[q]];
        if (same_index != same_coord) report.coordinate_violations.push_back({i, j, q, same_index});
      }
    }
  }
  report.condition_b = report.coordinate_violations.empty();
}

}  // namespace

GridReport verify_grid(const HermitianPolynomial& rho, const ExactGrid& g, double tol) {
  check_structure(rho, g);
  GridReport report;
  const Rational tol_sq = rational_from_double(tol) * rational_from_double(tol);
  for (std::size_t i = 0; i < g.points.size(); ++i) {
    for (std::size_t j = 0; j < g.points.size(); ++j) {
      Rational m = eval_hermitian(rho, g.points[i], g.points[j]).norm();
      double r = sgn(m) == 0 ? 0.0 : std::sqrt(m.get_d());
      report.max_residual = std::max(report.max_residual, r);
      bool bad = tol <= 0.0 ? sgn(m) != 0 : m > tol_sq;
      if (bad) report.pair_violations.push_back({i, j, r});
    }
  }
  report.condition_a = report.pair_violations.empty();
  check_condition_b(g, report);
  report.ok = report.condition_a && report.condition_b;
  return report;
}

GridReport verify_grid(const HermitianPolynomial& rho, const FloatGrid& g, double tol) {
  check_structure(rho, g);
  CompiledHermitian f(rho);
  GridReport report;
  for (std::size_t i = 0; i < g.points.size(); ++i) {
    for (std::size_t j = 0; j < g.points.size(); ++j) {
      double r = std::abs(f.eval(g.points[i], g.points[j]));
      report.max_residual = std::max(report.max_residual, r);
      if (!(r <= tol)) report.pair_violations.push_back({i, j, r});
    }
  }
  report.condition_a = report.pair_violations.empty();
  check_condition_b(g, report);
  report.ok = report.condition_a && report.condition_b;
  return report;
}

// ---------------------------------------------------------------------------
// Search

void SearchConfig::validate() const {
  if (kappas.empty()) throw InvalidInput("kappa sweep must not be empty");
  for (std::size_t i = 0; i < kappas.size(); ++i) {
    if (kappas[i] < 1) throw InvalidInput("kappa must be positive");
    if (i > 0 && kappas[i] <= kappas[i - 1]) throw InvalidInput("kappa sweep must be strictly ascending");
  }
  if (d < 1) throw InvalidInput("d must be positive");
  if (!(eps0 > 0.0)) throw InvalidInput("eps0 must be positive");
  if (stages < 1) throw InvalidInput("at least one stage is required");
  if (!(tol > 0.0)) throw InvalidInput("tol must be positive");
  if (!(sep_factor > 0.0 && sep_factor < 1.0)) throw InvalidInput("sep_factor must lie in (0, 1)");
  if (restarts < 1) throw InvalidInput("restarts must be at least 1");
  if (max_iters < 1) throw InvalidInput("max_iters must be at least 1");
}

double SearchConfig::eps_at(unsigned stage) const { return std::ldexp(eps0, -static_cast<int>(stage)); }

namespace {

/// Unknowns of the grid search, laid out as complex variables: first the shared base values
/// t[q][m] (q < d, m <= kappa), then the free coordinates of every point.
class GridLayout {
 public:
  GridLayout(std::size_t n, unsigned kappa, const std::vector<unsigned>& lambda)
      : n_(n), d_(static_cast<unsigned>(lambda.size())), side_(kappa + 1) {
    grid_.d = d_;
    grid_.kappa = kappa;
    grid_.lambda = lambda;
    count_ = grid_.expected_size();
    var_.assign(count_, std::vector<std::size_t>(n_));
    std::vector<int> base_pos(n_, -1);
    for (unsigned q = 0; q < d_; ++q) base_pos[lambda[q]] = static_cast<int>(q);
    std::size_t next = static_cast<std::size_t>(d_) * side_;
    for (std::size_t i = 0; i < count_; ++i) {
      auto nu = grid_.nu_of(i);
      for (std::size_t k = 0; k < n_; ++k) {
        if (base_pos[k] >= 0) {
          var_[i][k] = static_cast<std::size_t>(base_pos[k]) * side_ + (nu[base_pos[k]] - 1);
        } else {
          var_[i][k] = next++;
        }
      }
    }
    nvars_ = next;
  }

  std::size_t n() const { return n_; }
  unsigned d() const { return d_; }
  unsigned side() const { return side_; }
  std::size_t count() const { return count_; }
  std::size_t complex_vars() const { return nvars_; }
  std::size_t var(std::size_t point, std::size_t coord) const { return var_[point][coord]; }
  std::size_t base_var(unsigned q, unsigned m) const { return static_cast<std::size_t>(q) * side_ + m; }
  std::vector<unsigned> nu_of(std::size_t point) const { return grid_.nu_of(point); }

  std::vector<CPoint> points(const Eigen::VectorXd& x) const {
    std::vector<CPoint> pts(count_, CPoint(n_));
    for (std::size_t i = 0; i < count_; ++i) {
      for (std::size_t k = 0; k < n_; ++k) {
        std::size_t v = var_[i][k];
        pts[i][k] = {x[2 * v], x[2 * v + 1]};
      }
    }
    return pts;
  }

  FloatGrid grid(const Eigen::VectorXd& x) const {
    FloatGrid g = grid_;
    g.points = points(x);
    return g;
  }

 private:
  std::size_t n_;
  unsigned d_;
  unsigned side_;
  std::size_t count_ = 0;
  std::size_t nvars_ = 0;
  FloatGrid grid_;
  std::vector<std::vector<std::size_t>> var_;
};

struct Feasibility {
  double pair = 0.0;       // max |rho(p_i, conj p_j)|
  double separation = 0.0; // smallest distance between distinct base values
  double radius = 0.0;     // largest distance to the ball center
};

Feasibility measure(const CompiledHermitian& f, const GridLayout& layout, const Eigen::VectorXd& x, const CPoint& p) {
  Feasibility out;
  auto pts = layout.points(x);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i; j < pts.size(); ++j) out.pair = std::max(out.pair, std::abs(f.eval(pts[i], pts[j])));
    out.radius = std::max(out.radius, distance(pts[i], p));
  }
  out.separation = std::numeric_limits<double>::infinity();
  for (unsigned q = 0; q < layout.d(); ++q) {
    for (unsigned m = 0; m < layout.side(); ++m) {
      for (unsigned m2 = m + 1; m2 < layout.side(); ++m2) {
        std::size_t a = layout.base_var(q, m), b = layout.base_var(q, m2);
        double dist = std::hypot(x[2 * a] - x[2 * b], x[2 * a + 1] - x[2 * b + 1]);
        out.separation = std::min(out.separation, dist);
      }
    }
  }
  return out;
}

std::uint64_t double_bits(double v) {
  std::uint64_t bits;
  static_assert(sizeof(bits) == sizeof(v));
  std::memcpy(&bits, &v, sizeof(v));
  return bits;
}

}  // namespace

SearchResult search_grid(const HermitianPolynomial& rho, const CPoint& p, const SearchConfig& cfg, unsigned kappa,
                         double eps, const std::vector<unsigned>& lambda) {
  cfg.validate();
  if (!(eps > 0.0)) throw InvalidInput("search radius must be positive");
  if (p.size() != rho.dim()) throw DimensionMismatch("search point dimension differs from rho");
  if (kappa < 1) throw InvalidInput("kappa must be positive");
  const std::size_t n = rho.dim();
  if (lambda.empty() || lambda.size() >= n) throw InvalidInput("lambda must have between 1 and n-1 entries");
  for (std::size_t q = 0; q < lambda.size(); ++q) {
    if (lambda[q] >= n || (q > 0 && lambda[q] <= lambda[q - 1])) throw InvalidInput("lambda must be strictly increasing");
  }

  CompiledHermitian f(rho);
  GridLayout layout(n, kappa, lambda);
  const double sep = cfg.sep_factor * eps;
  const double sep_target = std::min(1.1 * sep, 0.5 * (sep + eps));
  const double ball_target = 0.9 * eps;
  const std::size_t npts = layout.count();
  const std::size_t nreal = 2 * layout.complex_vars();
  const std::size_t sep_rows = static_cast<std::size_t>(layout.d()) * layout.side() * (layout.side() - 1) / 2;
  const std::size_t rows = npts + npts * (npts - 1) + sep_rows + npts;

  ResidualFunction residual = [&](const Eigen::VectorXd& x, Eigen::VectorXd& r, Eigen::MatrixXd* jac) {
    r.setZero(static_cast<Eigen::Index>(rows));
    if (jac) jac->setZero(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(nreal));
    auto pts = layout.points(x);
    std::vector<std::complex<double>> dz, dwbar;
    const std::complex<double> I(0.0, 1.0);
    Eigen::Index row = 0;
    for (std::size_t i = 0; i < npts; ++i) {
      for (std::size_t j = i; j < npts; ++j) {
        std::complex<double> v = jac ? f.eval_with_gradient(pts[i], pts[j], dz, dwbar) : f.eval(pts[i], pts[j]);
        const bool diag = i == j;
        r[row] = v.real();
        if (!diag) r[row + 1] = v.imag();
        if (jac) {
          for (std::size_t k = 0; k < n; ++k) {
            std::size_t vi = layout.var(i, k), vj = layout.var(j, k);
            // d/dRe, d/dIm of the first argument (holomorphic) and of the second (antiholomorphic)
            std::complex<double> dre_i = dz[k], dim_i = I * dz[k];
            std::complex<double> dre_j = dwbar[k], dim_j = -I * dwbar[k];
            (*jac)(row, 2 * vi) += dre_i.real();
            (*jac)(row, 2 * vi + 1) += dim_i.real();
            (*jac)(row, 2 * vj) += dre_j.real();
            (*jac)(row, 2 * vj + 1) += dim_j.real();
            if (!diag) {
              (*jac)(row + 1, 2 * vi) += dre_i.imag();
              (*jac)(row + 1, 2 * vi + 1) += dim_i.imag();
              (*jac)(row + 1, 2 * vj) += dre_j.imag();
              (*jac)(row + 1, 2 * vj + 1) += dim_j.imag();
            }
          }
        }
        row += diag ? 1 : 2;
      }
    }
    for (unsigned q = 0; q < layout.d(); ++q) {
      for (unsigned m = 0; m < layout.side(); ++m) {
        for (unsigned m2 = m + 1; m2 < layout.side(); ++m2, ++row) {
          std::size_t a = layout.base_var(q, m), b = layout.base_var(q, m2);
          double dx = x[2 * a] - x[2 * b], dy = x[2 * a + 1] - x[2 * b + 1];
          double dist = std::hypot(dx, dy);
          double h = sep_target - dist;
          if (h <= 0.0) continue;
          // Squared hinges keep the Jacobian continuous where a constraint becomes active; a
          // plain hinge makes LM zigzag across the kink and crawl.
          r[row] = h * h / sep_target;
          if (jac && dist > 0.0) {
            const double g = 2.0 * h / sep_target / dist;
            (*jac)(row, 2 * a) = -g * dx;
            (*jac)(row, 2 * a + 1) = -g * dy;
            (*jac)(row, 2 * b) = g * dx;
            (*jac)(row, 2 * b + 1) = g * dy;
          }
        }
      }
    }
    for (std::size_t i = 0; i < npts; ++i, ++row) {
      double dist = distance(pts[i], p);
      double h = dist - ball_target;
      if (h <= 0.0) continue;
      r[row] = h * h / ball_target;
      if (jac && dist > 0.0) {
        const double g = 2.0 * h / ball_target / dist;
        for (std::size_t k = 0; k < n; ++k) {
          std::size_t v = layout.var(i, k);
          std::complex<double> delta = pts[i][k] - p[k];
          (*jac)(row, 2 * v) += g * delta.real();
          (*jac)(row, 2 * v + 1) += g * delta.imag();
        }
      }
    }
  };

  std::vector<std::uint64_t> seed_material{cfg.seed, kappa, double_bits(eps)};
  for (unsigned l : lambda) seed_material.push_back(l);
  for (const auto& c : p) {
    seed_material.push_back(double_bits(c.real()));
    seed_material.push_back(double_bits(c.imag()));
  }
  std::vector<std::uint32_t> words;
  for (auto v : seed_material) {
    words.push_back(static_cast<std::uint32_t>(v));
    words.push_back(static_cast<std::uint32_t>(v >> 32U));
  }
  std::seed_seq seq(words.begin(), words.end());
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double disc = ball_target / std::sqrt(static_cast<double>(n));

  LevenbergMarquardtOptions options;
  options.max_iters = static_cast<int>(cfg.max_iters);
  options.residual_tol = std::min(1e-15, cfg.tol * 1e-3);

  SearchResult result;
  result.residual = std::numeric_limits<double>::infinity();
  for (unsigned attempt = 0; attempt < cfg.restarts; ++attempt) {
    Eigen::VectorXd x0(static_cast<Eigen::Index>(nreal));
    if (attempt % 2 == 0) {
      // Start on a random complex d-plane through a point near p: base values spread evenly on
      // circles, free coordinates affine in the base offsets. Uniform starts collapse toward
      // coincident points far more often for larger kappa.
      const double radius = 0.5 * ball_target / std::sqrt(static_cast<double>(layout.d()));
      std::vector<std::vector<std::complex<double>>> offset(layout.d());
      for (unsigned q = 0; q < layout.d(); ++q) {
        const double phase = 2.0 * M_PI * unit(rng);
        for (unsigned m = 0; m < layout.side(); ++m) {
          offset[q].push_back(std::polar(radius, phase + 2.0 * M_PI * m / layout.side()));
          const std::size_t v = layout.base_var(q, m);
          x0[2 * v] = p[lambda[q]].real() + offset[q][m].real();
          x0[2 * v + 1] = p[lambda[q]].imag() + offset[q][m].imag();
        }
      }
      const double slope_scale = 1.0 / std::sqrt(static_cast<double>(n));
      std::vector<std::complex<double>> anchor(n);
      std::vector<std::vector<std::complex<double>>> slope(n, std::vector<std::complex<double>>(layout.d()));
      for (std::size_t k = 0; k < n; ++k) {
        anchor[k] = p[k] + std::polar(0.1 * radius * std::sqrt(unit(rng)), 2.0 * M_PI * unit(rng));
        for (auto& s : slope[k]) s = std::polar(slope_scale * std::sqrt(unit(rng)), 2.0 * M_PI * unit(rng));
      }
      std::vector<bool> is_base(n, false);
      for (unsigned l : lambda) is_base[l] = true;
      // Make each direction (e_lambda_q + slope[.][q]) complex-tangent to X at p.
      std::vector<std::complex<double>> grad, grad_bar;
      f.eval_with_gradient(p, p, grad, grad_bar);
      double free_norm = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        if (!is_base[k]) free_norm += std::norm(grad[k]);
      }
      if (free_norm > 0.0) {
        for (unsigned q = 0; q < layout.d(); ++q) {
          std::complex<double> dot = grad[lambda[q]];
          for (std::size_t k = 0; k < n; ++k) {
            if (!is_base[k]) dot += grad[k] * slope[k][q];
          }
          for (std::size_t k = 0; k < n; ++k) {
            if (!is_base[k]) slope[k][q] -= dot * std::conj(grad[k]) / free_norm;
          }
        }
      }
      for (std::size_t i = 0; i < npts; ++i) {
        const auto nu = layout.nu_of(i);
        for (std::size_t k = 0; k < n; ++k) {
          if (is_base[k]) continue;
          std::complex<double> value = anchor[k];
          for (unsigned q = 0; q < layout.d(); ++q) value += slope[k][q] * offset[q][nu[q] - 1];
          const std::size_t v = layout.var(i, k);
          x0[2 * v] = value.real();
          x0[2 * v + 1] = value.imag();
        }
      }
    } else {
      for (std::size_t v = 0; v < layout.complex_vars(); ++v) {
        double radius = disc * std::sqrt(unit(rng));
        double angle = 2.0 * M_PI * unit(rng);
        x0[2 * v] = radius * std::cos(angle);
        x0[2 * v + 1] = radius * std::sin(angle);
      }
      // Offsets are drawn relative to p; shift each variable by the coordinate it represents.
      std::vector<bool> shifted(layout.complex_vars(), false);
      for (std::size_t i = 0; i < npts; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
          std::size_t v = layout.var(i, k);
          if (shifted[v]) continue;
          shifted[v] = true;
          x0[2 * v] += p[k].real();
          x0[2 * v + 1] += p[k].imag();
        }
      }
    }

    auto lm = levenberg_marquardt(residual, x0, options);
    result.restarts_used = attempt + 1;
    Feasibility feas = measure(f, layout, lm.x, p);
    double merit = std::max({feas.pair, std::max(0.0, sep - feas.separation), std::max(0.0, feas.radius - eps)});
    if (!std::isfinite(merit)) continue;
    const bool feasible = feas.pair <= cfg.tol && feas.separation >= sep && feas.radius < eps;
    if (feasible) {
      FloatGrid g = layout.grid(lm.x);
      GridReport report = verify_grid(rho, g, cfg.tol);
      if (report.ok) {
        result.grid = std::move(g);
        result.residual = report.max_residual;
        return result;
      }
    }
    result.residual = std::min(result.residual, merit);
  }
  return result;
}

// ---------------------------------------------------------------------------
// Classification

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::In:
      return "IN";
    case Verdict::Out:
      return "OUT";
    case Verdict::Undecided:
      return "UNDECIDED";
  }
  return "UNDECIDED";
}

Verdict verdict_from_string(const std::string& s) {
  if (s == "IN") return Verdict::In;
  if (s == "OUT") return Verdict::Out;
  if (s == "UNDECIDED") return Verdict::Undecided;
  throw InvalidInput("unknown verdict '" + s + "'");
}

const KappaRecord& Classification::deciding_record() const {
  for (const auto& r : records) {
    if (r.kappa == kappa) return r;
  }
  throw InvalidInput("classification has no record for its deciding kappa");
}

namespace {

Classification classify_float(const HermitianPolynomial& rho, const CPoint& p, const SearchConfig& cfg) {
  Classification out;
  out.point = p;
  out.d = cfg.d;
  out.verdict = Verdict::Out;
  const auto tuples = index_tuples(cfg.d, static_cast<unsigned>(rho.dim()));
  for (unsigned kappa : cfg.kappas) {
    KappaRecord rec;
    rec.kappa = kappa;
    rec.verdict = Verdict::In;
    for (unsigned s = 0; s < cfg.stages; ++s) {
      StageRecord st;
      st.eps = cfg.eps_at(s);
      st.best_residual = std::numeric_limits<double>::infinity();
      for (const auto& lambda : tuples) {
        SearchResult r = search_grid(rho, p, cfg, kappa, st.eps, lambda);
        if (r.grid) {
          st.found = true;
          st.lambda = lambda;
          st.best_residual = r.residual;
          break;
        }
        st.best_residual = std::min(st.best_residual, r.residual);
      }
      rec.stages.push_back(st);
      if (!st.found) {
        rec.verdict = st.best_residual <= 10.0 * cfg.tol ? Verdict::Undecided : Verdict::Out;
        break;
      }
    }
    out.records.push_back(rec);
  }
  // IN if some kappa succeeded (the largest such decides), else UNDECIDED if some kappa was
  // inconclusive, else OUT.
  for (const auto& rec : out.records) {
    if (rec.verdict == Verdict::In) {
      out.verdict = Verdict::In;
      out.kappa = rec.kappa;
    }
  }
  if (out.verdict != Verdict::In) {
    out.kappa = out.records.back().kappa;
    for (const auto& rec : out.records) {
      if (rec.verdict == Verdict::Undecided) {
        out.verdict = Verdict::Undecided;
        out.kappa = rec.kappa;
        break;
      }
    }
  }
  return out;
}

ComplexRational exact_dot_conj(const QPoint& a) {
  ComplexRational s(0);
  for (const auto& c : a) s += ComplexRational(c.norm());
  return s;
}

// Inverse of a square exact matrix; nullopt when singular.
std::optional<std::vector<std::vector<ComplexRational>>> invert(std::vector<std::vector<ComplexRational>> m) {
  const std::size_t k = m.size();
  std::vector<std::vector<ComplexRational>> inv(k, std::vector<ComplexRational>(k, ComplexRational(0)));
  for (std::size_t i = 0; i < k; ++i) inv[i][i] = 1;
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t piv = col;
    while (piv < k && m[piv][col].is_zero()) ++piv;
    if (piv == k) return std::nullopt;
    std::swap(m[piv], m[col]);
    std::swap(inv[piv], inv[col]);
    ComplexRational scale = ComplexRational(1) / m[col][col];
    for (std::size_t j = 0; j < k; ++j) {
      m[col][j] *= scale;
      inv[col][j] *= scale;
    }
    for (std::size_t row = 0; row < k; ++row) {
      if (row == col || m[row][col].is_zero()) continue;
      ComplexRational factor = m[row][col];
      for (std::size_t j = 0; j < k; ++j) {
        m[row][j] -= factor * m[col][j];
        inv[row][j] -= factor * inv[col][j];
      }
    }
  }
  return inv;
}

}  // namespace

std::optional<ExactGrid> plane_grid(const ExactPlane& plane, unsigned kappa, const std::vector<unsigned>& lambda,
                                    const QPoint& center, double eps) {
  const std::size_t d = plane.directions.size();
  const std::size_t n = plane.base.size();
  if (d == 0 || lambda.size() != d || center.size() != n) throw InvalidInput("plane/lambda/center shapes disagree");
  for (const auto& v : plane.directions) {
    if (v.size() != n) throw DimensionMismatch("plane direction dimension differs from base");
  }
  std::vector<std::vector<ComplexRational>> minor(d, std::vector<ComplexRational>(d));
  for (std::size_t q = 0; q < d; ++q) {
    for (std::size_t j = 0; j < d; ++j) minor[q][j] = plane.directions[j][lambda[q]];
  }
  auto inv = invert(minor);
  if (!inv) return std::nullopt;
  // Directions adapted to lambda: adapted[j][lambda[q]] = delta_{qj}.
  std::vector<QPoint> adapted(d, QPoint(n, ComplexRational(0)));
  double total_norm = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t l = 0; l < d; ++l) {
      for (std::size_t k = 0; k < n; ++k) adapted[j][k] += plane.directions[l][k] * (*inv)[l][j];
    }
    total_norm += std::sqrt(exact_dot_conj(adapted[j]).re().get_d());
  }
  QPoint offset(n);
  for (std::size_t k = 0; k < n; ++k) offset[k] = plane.base[k] - center[k];
  double base_dist = std::sqrt(exact_dot_conj(offset).re().get_d());
  double room = 0.9 * eps - base_dist;
  if (!(room > 0.0)) return std::nullopt;
  double h_max = room / (static_cast<double>(kappa) * total_norm);
  int exponent = 0;
  std::frexp(h_max, &exponent);
  // h = 2^(exponent - 1) <= h_max
  Rational h = 1;
  if (exponent >= 1) {
    mpq_mul_2exp(h.get_mpq_t(), h.get_mpq_t(), static_cast<unsigned long>(exponent - 1));
  } else {
    mpq_div_2exp(h.get_mpq_t(), h.get_mpq_t(), static_cast<unsigned long>(1 - exponent));
  }

  ExactGrid g;
  g.d = static_cast<unsigned>(d);
  g.kappa = kappa;
  g.lambda = lambda;
  const Rational eps_sq = rational_from_double(eps) * rational_from_double(eps);
  for (std::size_t i = 0; i < g.expected_size(); ++i) {
    auto nu = g.nu_of(i);
    QPoint pt = plane.base;
    for (std::size_t j = 0; j < d; ++j) {
      ComplexRational step(Rational(h * (nu[j] - 1)));
      for (std::size_t k = 0; k < n; ++k) pt[k] += step * adapted[j][k];
    }
    QPoint diff(n);
    for (std::size_t k = 0; k < n; ++k) diff[k] = pt[k] - center[k];
    if (!(exact_dot_conj(diff).re() < eps_sq)) return std::nullopt;
    g.points.push_back(std::move(pt));
  }
  return g;
}

std::optional<Classification> certify_with_plane(const HermitianPolynomial& rho, const QPoint& p,
                                                 const ExactPlane& plane, const SearchConfig& cfg) {
  cfg.validate();
  if (plane.directions.size() != cfg.d) return std::nullopt;
  const auto tuples = index_tuples(cfg.d, static_cast<unsigned>(rho.dim()));
  Classification out;
  out.point = to_float(p);
  out.d = cfg.d;
  out.verdict = Verdict::In;
  for (unsigned kappa : cfg.kappas) {
    KappaRecord rec;
    rec.kappa = kappa;
    rec.verdict = Verdict::In;
    for (unsigned s = 0; s < cfg.stages; ++s) {
      StageRecord st;
      st.eps = cfg.eps_at(s);
      for (const auto& lambda : tuples) {
        auto g = plane_grid(plane, kappa, lambda, p, st.eps);
        if (!g) continue;
        GridReport report = verify_grid(rho, *g, 0.0);
        if (report.ok) {
          st.found = true;
          st.exact = true;
          st.lambda = lambda;
          st.best_residual = 0.0;
          break;
        }
      }
      if (!st.found) return std::nullopt;
      rec.stages.push_back(st);
    }
    out.records.push_back(rec);
    out.kappa = kappa;
  }
  return out;
}

Classification classify_point(const HermitianPolynomial& rho, const CPoint& p, const SearchConfig& cfg) {
  cfg.validate();
  if (p.size() != rho.dim()) throw DimensionMismatch("point dimension differs from rho");
  if (cfg.d >= rho.dim()) throw InvalidInput("d must be smaller than n");
  double value = std::abs(eval_hermitian(rho, p, p));
  if (!(value <= cfg.tol)) {
    std::ostringstream msg;
    msg << "point not on X within tol (|rho| = " << value << ")";
    throw NotOnVariety(msg.str());
  }
  return classify_float(rho, p, cfg);
}

Classification classify_point(const HermitianPolynomial& rho, const QPoint& p, const SearchConfig& cfg,
                              const std::vector<ExactPlane>& hints) {
  cfg.validate();
  if (p.size() != rho.dim()) throw DimensionMismatch("point dimension differs from rho");
  if (cfg.d >= rho.dim()) throw InvalidInput("d must be smaller than n");
  ComplexRational value = eval_hermitian(rho, p, p);
  const Rational tol = rational_from_double(cfg.tol);
  if (value.norm() > tol * tol) {
    std::ostringstream msg;
    msg << "point not on X within tol (|rho| = " << std::sqrt(value.norm().get_d()) << ")";
    throw NotOnVariety(msg.str());
  }
  for (const auto& plane : hints) {
    if (auto cert = certify_with_plane(rho, p, plane, cfg)) return *cert;
  }
  return classify_float(rho, to_float(p), cfg);
}

// ---------------------------------------------------------------------------
// Region scan

Box parse_box(const std::string& text) {
  Box box;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto colon = item.find(':');
    if (colon == std::string::npos) throw InvalidInput("box entry '" + item + "' is not lo:hi");
    double lo = parse_rational(item.substr(0, colon)).get_d();
    double hi = parse_rational(item.substr(colon + 1)).get_d();
    if (hi < lo) throw InvalidInput("box entry '" + item + "' has hi < lo");
    box.lo.push_back(lo);
    box.hi.push_back(hi);
  }
  if (box.lo.empty() || box.lo.size() % 2 != 0) throw InvalidInput("box needs 2n entries (Re/Im per coordinate)");
  return box;
}

namespace {

CPoint from_real(const std::vector<double>& x) {
  CPoint z(x.size() / 2);
  for (std::size_t k = 0; k < z.size(); ++k) z[k] = {x[2 * k], x[2 * k + 1]};
  return z;
}

}  // namespace

std::optional<CPoint> project_to_variety(const HermitianPolynomial& rho, const CPoint& start, const Box& box,
                                         const ScanOptions& options, double tol) {
  CompiledHermitian f(rho);
  std::vector<double> x(2 * start.size());
  for (std::size_t k = 0; k < start.size(); ++k) {
    x[2 * k] = start[k].real();
    x[2 * k + 1] = start[k].imag();
  }
  const std::vector<double> x0 = x;
  const double target = std::max(tol * 1e-3, 1e-15);
  bool converged = false;
  for (int it = 0; it < 60; ++it) {
    CPoint z = from_real(x);
    double value = f.eval(z, z).real();
    if (std::abs(value) <= target) {
      converged = true;
      break;
    }
    auto grad = f.real_gradient(z);
    if (options.solve_coordinate) {
      double g = grad[*options.solve_coordinate];
      if (g == 0.0 || !std::isfinite(g)) return std::nullopt;
      x[*options.solve_coordinate] -= value / g;
    } else {
      double g2 = 0.0;
      for (double gi : grad) g2 += gi * gi;
      if (g2 == 0.0 || !std::isfinite(g2)) return std::nullopt;
      for (std::size_t i = 0; i < x.size(); ++i) x[i] -= value * grad[i] / g2;
    }
  }
  CPoint z = from_real(x);
  if (!converged && !(std::abs(f.eval(z, z).real()) <= tol)) return std::nullopt;
  if (options.solve_coordinate) {
    std::size_t c = *options.solve_coordinate;
    if (box.hi[c] > box.lo[c]) {
      if (x[c] < box.lo[c] || x[c] > box.hi[c]) return std::nullopt;
    } else if (std::abs(x[c] - box.lo[c]) > options.resolution) {
      return std::nullopt;
    }
  } else {
    double moved = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) moved += (x[i] - x0[i]) * (x[i] - x0[i]);
    if (std::sqrt(moved) > options.resolution) return std::nullopt;
  }
  return z;
}

std::vector<ScanRow> scan_region(const HermitianPolynomial& rho, const Box& box, const ScanOptions& options,
                                 const SearchConfig& cfg) {
  cfg.validate();
  const std::size_t dims = 2 * rho.dim();
  if (box.lo.size() != dims || box.hi.size() != dims) throw DimensionMismatch("box must have 2n entries");
  if (!(options.resolution > 0.0)) throw InvalidInput("resolution must be positive");
  if (options.solve_coordinate && *options.solve_coordinate >= dims) throw InvalidInput("solve coordinate out of range");

  std::vector<std::vector<double>> axes(dims);
  for (std::size_t c = 0; c < dims; ++c) {
    if (options.solve_coordinate && *options.solve_coordinate == c) {
      axes[c].push_back(0.5 * (box.lo[c] + box.hi[c]));
    } else if (box.hi[c] == box.lo[c]) {
      axes[c].push_back(box.lo[c]);
    } else {
      auto steps = static_cast<std::size_t>(std::floor((box.hi[c] - box.lo[c]) / options.resolution + 1e-9));
      for (std::size_t k = 0; k <= steps; ++k) axes[c].push_back(box.lo[c] + static_cast<double>(k) * options.resolution);
    }
  }
  std::size_t total = 1;
  for (const auto& a : axes) total *= a.size();

  std::vector<std::optional<ScanRow>> slots(total);
  auto work = [&](std::size_t first, std::size_t stride) {
    for (std::size_t idx = first; idx < total; idx += stride) {
      std::vector<double> x(dims);
      std::size_t rem = idx;
      for (std::size_t c = dims; c-- > 0;) {
        x[c] = axes[c][rem % axes[c].size()];
        rem /= axes[c].size();
      }
      auto projected = project_to_variety(rho, from_real(x), box, options, cfg.tol);
      if (!projected) continue;
      try {
        slots[idx] = ScanRow{idx, classify_point(rho, *projected, cfg)};
      } catch (const NotOnVariety&) {
      }
    }
  };
  unsigned threads = std::max(1U, options.threads);
  if (threads == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t, threads);
    for (auto& th : pool) th.join();
  }
  std::vector<ScanRow> rows;
  for (auto& s : slots) {
    if (s) rows.push_back(std::move(*s));
  }
  return rows;
}

}  // namespace germscan
