#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "germscan/polynomial.hpp"
#include "germscan/rational.hpp"

namespace germscan {

/// A candidate kappa-grid: (kappa+1)^d points indexed by nu in {1..kappa+1}^d whose lambda_j-th
/// coordinates agree exactly when the nu_j agree, and which pairwise satisfy rho(p, conj p') = 0.
///
/// `lambda` holds 0-based coordinate indices (strictly increasing). Points are stored in
/// lexicographic order of nu with nu_1 most significant; see `nu_of` / `index_of`.
template <typename Point>
struct BasicGrid {
  unsigned d = 1;
  unsigned kappa = 1;
  std::vector<unsigned> lambda;
  std::vector<Point> points;

  std::size_t expected_size() const;
  /// 1-based multi-index of the i-th stored point.
  std::vector<unsigned> nu_of(std::size_t i) const;
  std::size_t index_of(const std::vector<unsigned>& nu) const;
};

using ExactGrid = BasicGrid<QPoint>;
using FloatGrid = BasicGrid<CPoint>;

extern template struct BasicGrid<QPoint>;
extern template struct BasicGrid<CPoint>;

/// Sub-grid on indices {1..sub_kappa+1}^d; a valid grid restricts to a valid grid.
template <typename Point>
BasicGrid<Point> restrict_grid(const BasicGrid<Point>& g, unsigned sub_kappa);

/// All strictly increasing 0-based index tuples of length d in [0, n).
std::vector<std::vector<unsigned>> index_tuples(unsigned d, unsigned n);

struct PairViolation {
  std::size_t i = 0;
  std::size_t j = 0;
  double residual = 0.0;
};

struct CoordinateViolation {
  std::size_t i = 0;
  std::size_t j = 0;
  unsigned base = 0;  // position in lambda
  /// true: equal nu_j but different coordinate; false: different nu_j but shared coordinate.
  bool equal_index = false;
};

struct GridReport {
  bool ok = false;
  bool condition_a = false;
  bool condition_b = false;
  double max_residual = 0.0;
  std::vector<PairViolation> pair_violations;
  std::vector<CoordinateViolation> coordinate_violations;
};

/// Checks the vanishing condition on every ordered pair within tol (exactly when tol == 0 for
/// exact grids) and the coordinate-matching condition exactly. Throws StructuralError on wrong
/// cardinality, duplicate points, bad lambda or dimension.
GridReport verify_grid(const HermitianPolynomial& rho, const ExactGrid& g, double tol = 0.0);
GridReport verify_grid(const HermitianPolynomial& rho, const FloatGrid& g, double tol);

struct SearchConfig {
  /// Ascending list of kappa values, each searched and reported separately.
  std::vector<unsigned> kappas{1, 2, 3};
  unsigned d = 1;
  double eps0 = 0.2;
  unsigned stages = 4;
  double tol = 1e-12;
  double sep_factor = 0.25;
  unsigned restarts = 16;
  unsigned max_iters = 200;
  std::uint64_t seed = 0;

  /// Throws InvalidInput when a field is out of range.
  void validate() const;
  double eps_at(unsigned stage) const;
};

struct SearchResult {
  std::optional<FloatGrid> grid;
  /// Best feasibility residual over restarts: the max of pairwise |rho|, separation shortfall and
  /// ball overshoot. For a returned grid this is its max pairwise |rho|.
  double residual = 0.0;
  unsigned restarts_used = 0;
};

/// Multi-start Levenberg-Marquardt search for a kappa-grid with base `lambda` inside B(p, eps).
/// Deterministic in (inputs, cfg.seed). Never throws for an absent grid.
SearchResult search_grid(const HermitianPolynomial& rho, const CPoint& p, const SearchConfig& cfg, unsigned kappa,
                         double eps, const std::vector<unsigned>& lambda);

enum class Verdict { In, Out, Undecided };

std::string to_string(Verdict v);
Verdict verdict_from_string(const std::string& s);

struct StageRecord {
  double eps = 0.0;
  double best_residual = 0.0;
  bool found = false;
  std::vector<unsigned> lambda;  // 0-based; empty when nothing was found
  bool exact = false;            // certified by an exact grid at tol 0
};

struct KappaRecord {
  unsigned kappa = 0;
  Verdict verdict = Verdict::Out;
  std::vector<StageRecord> stages;
};

struct Classification {
  CPoint point;
  Verdict verdict = Verdict::Out;
  unsigned d = 1;
  /// kappa whose record decided the verdict: the largest IN kappa, the first UNDECIDED one, or the
  /// last kappa for OUT.
  unsigned kappa = 0;
  std::vector<KappaRecord> records;

  const KappaRecord& deciding_record() const;
};

/// Exact affine plane base + span(directions) assumed to lie in X; used to certify IN points.
struct ExactPlane {
  QPoint base;
  std::vector<QPoint> directions;
};

/// Exact kappa-grid on the plane inside B(center, eps), with base coordinates `lambda`.
/// Returns nullopt when the plane's lambda-minor is singular or its base is too far from center.
std::optional<ExactGrid> plane_grid(const ExactPlane& plane, unsigned kappa, const std::vector<unsigned>& lambda,
                                    const QPoint& center, double eps);

/// Tries to certify p through exact grids on the plane for every kappa and stage. Returns a
/// Classification with verdict IN when every exact grid verifies at tol 0, nullopt otherwise.
std::optional<Classification> certify_with_plane(const HermitianPolynomial& rho, const QPoint& p,
                                                 const ExactPlane& plane, const SearchConfig& cfg);

/// Per kappa: IN when every stage has some lambda admitting a grid in B(p, eps_s), OUT when a
/// stage fails with best residual > 10 tol, UNDECIDED when it lies in (tol, 10 tol]. The point is
/// IN if some kappa of the sweep is IN, else UNDECIDED if some kappa is, else OUT. OUT is
/// evidence, not proof.
///
/// Throws NotOnVariety when |rho(p, conj p)| > cfg.tol.
Classification classify_point(const HermitianPolynomial& rho, const CPoint& p, const SearchConfig& cfg);
/// Exact point: membership is decided exactly, and any hint planes are tried before searching.
Classification classify_point(const HermitianPolynomial& rho, const QPoint& p, const SearchConfig& cfg,
                              const std::vector<ExactPlane>& hints = {});

/// Axis-aligned box in R^{2n}, coordinates ordered (Re z_1, Im z_1, ..., Re z_n, Im z_n).
struct Box {
  std::vector<double> lo;
  std::vector<double> hi;
};

/// Parses "lo1:hi1,lo2:hi2,..." (2n entries). Throws InvalidInput.
Box parse_box(const std::string& text);

struct ScanOptions {
  double resolution = 0.05;
  /// Real coordinate solved for by 1-D Newton instead of being enumerated (index into 2n).
  std::optional<std::size_t> solve_coordinate;
  unsigned threads = 1;
};

struct ScanRow {
  std::size_t lattice_index = 0;
  Classification classification;
};

/// Enumerates the lattice of the box, projects every lattice point onto X by Newton iteration,
/// drops points without a nearby X point and classifies the rest. Rows come back sorted by
/// lattice index regardless of threading.
std::vector<ScanRow> scan_region(const HermitianPolynomial& rho, const Box& box, const ScanOptions& options,
                                 const SearchConfig& cfg);

/// Newton projection of a real point of R^{2n} onto rho = 0; nullopt if it does not converge or
/// leaves the allowed neighbourhood.
std::optional<CPoint> project_to_variety(const HermitianPolynomial& rho, const CPoint& start, const Box& box,
                                         const ScanOptions& options, double tol);

}  // namespace germscan
