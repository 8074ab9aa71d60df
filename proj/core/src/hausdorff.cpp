#include "germscan/hausdorff.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>
#include <string>

#include "germscan/errors.hpp"

namespace germscan {

namespace {

bool point_less(const CPoint& a, const CPoint& b) {
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k].real() != b[k].real()) return a[k].real() < b[k].real();
    if (a[k].imag() != b[k].imag()) return a[k].imag() < b[k].imag();
  }
  return false;
}

double squared_distance(const CPoint& a, const CPoint& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += std::norm(a[k] - b[k]);
  return s;
}

void require_same_dim(const PointCloud& A, const PointCloud& B) {
  if (A.dim() != B.dim()) throw DimensionMismatch("point clouds live in different dimensions");
}

}  // namespace

PointCloud::PointCloud(std::vector<CPoint> points) {
  if (points.empty()) throw InvalidInput("point cloud must be nonempty");
  n_ = points.front().size();
  if (n_ == 0) throw InvalidInput("points must have at least one coordinate");
  for (const auto& p : points) {
    if (p.size() != n_) throw DimensionMismatch("point cloud mixes dimensions");
    for (const auto& c : p) {
      if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) throw InvalidInput("point cloud has a non-finite entry");
    }
  }
  std::sort(points.begin(), points.end(), point_less);
  points.erase(std::unique(points.begin(), points.end()), points.end());
  points_ = std::move(points);
}

PointCloud read_point_cloud_csv(std::istream& in) {
  std::vector<CPoint> points;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    if (line_no == 1 && std::isalpha(static_cast<unsigned char>(line[line.find_first_not_of(" \t")]))) continue;
    std::vector<double> values;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t used = 0;
        values.push_back(std::stod(cell, &used));
        if (cell.find_first_not_of(" \t", used) != std::string::npos) throw InvalidInput("");
      } catch (const std::exception&) {
        throw InvalidInput("point cloud line " + std::to_string(line_no) + ": bad number '" + cell + "'");
      }
    }
    if (values.empty() || values.size() % 2 != 0) {
      throw InvalidInput("point cloud line " + std::to_string(line_no) + ": expected an even number of columns");
    }
    CPoint p(values.size() / 2);
    for (std::size_t k = 0; k < p.size(); ++k) p[k] = {values[2 * k], values[2 * k + 1]};
    points.push_back(std::move(p));
  }
  return PointCloud(std::move(points));
}

void write_point_cloud_csv(std::ostream& out, const PointCloud& cloud) {
  const auto old = out.precision(17);
  for (const auto& p : cloud.points()) {
    for (std::size_t k = 0; k < p.size(); ++k) {
      if (k) out << ',';
      out << p[k].real() << ',' << p[k].imag();
    }
    out << '\n';
  }
  out.precision(old);
}

double directed_hausdorff(const PointCloud& A, const PointCloud& B) {
  require_same_dim(A, B);
  double worst = 0.0;
  for (const auto& a : A.points()) {
    double nearest = std::numeric_limits<double>::infinity();
    for (const auto& b : B.points()) {
      nearest = std::min(nearest, squared_distance(a, b));
      // a cannot raise the maximum any more.
      if (nearest <= worst) break;
    }
    worst = std::max(worst, nearest);
  }
  return std::sqrt(worst);
}

double hausdorff_distance(const PointCloud& A, const PointCloud& B) {
  return std::max(directed_hausdorff(A, B), directed_hausdorff(B, A));
}

double hausdorff_distance_bruteforce(const PointCloud& A, const PointCloud& B) {
  require_same_dim(A, B);
  auto directed = [](const PointCloud& X, const PointCloud& Y) {
    double worst = 0.0;
    for (const auto& x : X.points()) {
      double nearest = std::numeric_limits<double>::infinity();
      for (const auto& y : Y.points()) nearest = std::min(nearest, distance(x, y));
      worst = std::max(worst, nearest);
    }
    return worst;
  };
  return std::max(directed(A, B), directed(B, A));
}

LimitContainmentReport limit_containment_check(const std::vector<PointCloud>& a_seq,
                                               const std::vector<PointCloud>& b_seq, const PointCloud& a_limit,
                                               const PointCloud& b_limit, double rate, double tol) {
  if (a_seq.size() != b_seq.size()) throw DimensionMismatch("sequences must have the same length");
  if (a_seq.empty()) throw InvalidInput("sequences must be nonempty");
  if (!(rate > 0) || !(tol >= 0)) throw InvalidInput("rate must be positive and tol non-negative");

  LimitContainmentReport r;
  for (std::size_t idx = 0; idx < a_seq.size(); ++idx) {
    const double bound = std::ldexp(rate, -static_cast<int>(idx + 1));
    const double da = hausdorff_distance(a_seq[idx], a_limit);
    const double db = hausdorff_distance(b_seq[idx], b_limit);
    r.distance_a.push_back(da);
    r.distance_b.push_back(db);
    const bool subset = directed_hausdorff(a_seq[idx], b_seq[idx]) <= tol;
    if (da > bound || db > bound || !subset) r.hypothesis_violations.push_back(idx + 1);
  }
  r.hypotheses_hold = r.hypothesis_violations.empty();
  r.containment_gap = directed_hausdorff(a_limit, b_limit);
  r.contained = r.containment_gap <= tol;
  return r;
}

ClosednessReport closedness_experiment(const HermitianPolynomial& rho, const std::vector<CPoint>& sequence,
                                       const CPoint& limit, const SearchConfig& cfg, bool verify_sequence) {
  if (sequence.empty()) throw InvalidInput("sequence must be nonempty");
  cfg.validate();
  for (const auto& p : sequence) {
    if (p.size() != limit.size()) throw DimensionMismatch("sequence point dimension differs from the limit");
  }
  const double first = distance(sequence.front(), limit);
  const double last = distance(sequence.back(), limit);
  if (last > first || last > cfg.eps_at(0)) {
    std::ostringstream os;
    os << "sequence does not approach the limit point (first distance " << first << ", last distance " << last
       << ")";
    throw InvalidInput(os.str());
  }

  ClosednessReport r;
  r.tail_distance = last;
  r.hypothesis_holds = true;
  if (verify_sequence) {
    for (const auto& p : sequence) {
      const Verdict v = classify_point(rho, p, cfg).verdict;
      r.sequence_verdicts.push_back(v);
      if (v != Verdict::In) r.hypothesis_holds = false;
    }
  }
  r.limit_classification = classify_point(rho, limit, cfg);
  r.limit_verdict = r.limit_classification.verdict;
  return r;
}

}  // namespace germscan
