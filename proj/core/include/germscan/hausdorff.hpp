#pragma once

#include <cstddef>
#include <istream>
#include <ostream>
#include <vector>

#include "germscan/grid.hpp"
#include "germscan/rational.hpp"

namespace germscan {

/// Finite nonempty subset of C^n. Duplicate points are dropped on construction.
class PointCloud {
 public:
  /// Throws InvalidInput when empty, DimensionMismatch when the points disagree in dimension.
  explicit PointCloud(std::vector<CPoint> points);

  std::size_t dim() const { return n_; }
  std::size_t size() const { return points_.size(); }
  const std::vector<CPoint>& points() const { return points_; }

 private:
  std::size_t n_ = 0;
  std::vector<CPoint> points_;
};

/// CSV rows of 2n reals re1,im1,...,ren,imn; an optional header line starting with a letter.
PointCloud read_point_cloud_csv(std::istream& in);
void write_point_cloud_csv(std::ostream& out, const PointCloud& cloud);

/// sup_{a in A} dist(a, B).
double directed_hausdorff(const PointCloud& A, const PointCloud& B);
/// max of the two directed distances, with early termination of the inner scan.
double hausdorff_distance(const PointCloud& A, const PointCloud& B);
/// Reference all-pairs computation without early termination.
double hausdorff_distance_bruteforce(const PointCloud& A, const PointCloud& B);

struct LimitContainmentReport {
  /// d_H(A_j, limit A) and d_H(B_j, limit B), per j (j = index + 1).
  std::vector<double> distance_a;
  std::vector<double> distance_b;
  /// 1-based j where a distance exceeds rate 2^-j.
  std::vector<std::size_t> hypothesis_violations;
  bool hypotheses_hold = false;
  /// Every point of limit A lies within tol of limit B.
  bool contained = false;
  double containment_gap = 0.0;
};

/// Hypotheses: A_j subset B_j (within tol), d_H(A_j, A) <= rate 2^-j, d_H(B_j, B) <= rate 2^-j.
LimitContainmentReport limit_containment_check(const std::vector<PointCloud>& a_seq,
                                               const std::vector<PointCloud>& b_seq, const PointCloud& a_limit,
                                               const PointCloud& b_limit, double rate, double tol = 1e-12);

struct ClosednessReport {
  std::vector<Verdict> sequence_verdicts;
  /// Every p_j was classified IN (or the check was skipped).
  bool hypothesis_holds = false;
  Verdict limit_verdict = Verdict::Out;
  Classification limit_classification;
  /// |p_last - p_0|.
  double tail_distance = 0.0;
};

/// Classifies p_0 given points p_j -> p_0 of the set. Throws InvalidInput when the sequence does
/// not approach p_0: its last point is farther from p_0 than its first point, or than the
/// first-stage radius.
ClosednessReport closedness_experiment(const HermitianPolynomial& rho, const std::vector<CPoint>& sequence,
                                       const CPoint& limit, const SearchConfig& cfg, bool verify_sequence = true);

}  // namespace germscan
