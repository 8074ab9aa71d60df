#pragma once

#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "germscan/curve.hpp"
#include "germscan/dangelo.hpp"
#include "germscan/grid.hpp"
#include "germscan/polynomial.hpp"

namespace germscan {

// Text formats. Every loader throws InvalidInput (or a more specific Error) on malformed input,
// and every writer's output is accepted by the matching loader.

/// { "n": int, "center": [{"re": "p/q", "im": "p/q"}...], "terms": [{"alpha": [...], "beta": [...],
/// "re": "p/q", "im": "p/q"}...] }. A term whose mirror (beta, alpha) is absent gets the conjugate
/// mirror added; a present mirror must be the conjugate, and diagonal terms must be real
/// (NotHermitian otherwise). "center" may be omitted for the origin.
HermitianPolynomial polynomial_from_json(const std::string& text);
std::string polynomial_to_json(const HermitianPolynomial& rho);

/// { "n": int, "generators": [[ints]...] }
MonomialIdeal ideal_from_json(const std::string& text);
std::string ideal_to_json(const MonomialIdeal& ideal);

/// { "components": [[{"k": int, "re": "p/q", "im": "p/q"}...]...] }, anchored at `anchor`.
CurveJet curve_from_json(const std::string& text, const QPoint& anchor);

/// { "d", "kappa", "lambda": [1-based], "points": [[{"re", "im"}...]...] } with rational strings
/// for exact grids and numbers for float grids. Either loader accepts both encodings.
ExactGrid exact_grid_from_json(const std::string& text);
FloatGrid float_grid_from_json(const std::string& text);
std::string grid_to_json(const ExactGrid& g);
std::string grid_to_json(const FloatGrid& g);

/// { "base": [{"re", "im"}...], "directions": [[{"re", "im"}...]...] }
ExactPlane plane_from_json(const std::string& text);

std::string classification_to_json(const Classification& c);
Classification classification_from_json(const std::string& text);

std::string decomposition_to_json(const HoloDecomposition& dec);
HoloDecomposition decomposition_from_json(const std::string& text);

/// A point given as 2n comma-separated reals (Re z_1, Im z_1, ...). Entries written as integers,
/// decimals or "a/b" are read exactly; anything else that parses as a double is not.
struct ParsedPoint {
  QPoint exact;
  CPoint value;
  bool is_exact = false;
};

ParsedPoint parse_point(const std::string& text, std::size_t n);

/// One line of a scan table.
struct ScanTableRow {
  CPoint point;
  Verdict verdict = Verdict::Out;
  unsigned kappa = 0;
  unsigned d = 1;
  std::vector<unsigned> lambda;  // 1-based, first stage of the deciding record
  std::vector<std::optional<double>> residuals;  // per stage; empty where the stage was not run
};

std::vector<ScanTableRow> scan_table(const std::vector<ScanRow>& rows, unsigned stages);

/// Header re1,im1,...,verdict,kappa,d,lambda,residual_s0,... then one row per point, floats with
/// 17 significant digits and lambda entries joined by ';'.
void write_scan_csv(std::ostream& out, const std::vector<ScanTableRow>& rows, std::size_t n, unsigned stages);
std::vector<ScanTableRow> read_scan_csv(std::istream& in);

std::string scan_to_json(const std::vector<ScanTableRow>& rows, std::size_t n, unsigned stages);
std::vector<ScanTableRow> scan_from_json(const std::string& text);

std::string read_file(const std::string& path);

}  // namespace germscan
