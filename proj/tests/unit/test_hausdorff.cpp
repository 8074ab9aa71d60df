#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "germscan/errors.hpp"
#include "germscan/hausdorff.hpp"
#include "germscan/io.hpp"
#include "support.hpp"

using namespace germscan;
using namespace germscan::testing;

namespace {

PointCloud cloud(std::initializer_list<std::initializer_list<double>> rows) {
  std::vector<CPoint> pts;
  for (const auto& r : rows) pts.push_back(cpoint(r));
  return PointCloud(pts);
}

PointCloud random_cloud(RandomSource& rs, std::size_t n, std::size_t size, double spread) {
  std::vector<CPoint> pts;
  for (std::size_t k = 0; k < size; ++k) {
    CPoint p(n);
    for (auto& c : p) c = {rs.real(-spread, spread), rs.real(-spread, spread)};
    pts.push_back(p);
  }
  return PointCloud(pts);
}

// Samples of zeta in [-1, 1] used for the line clouds below.
std::vector<double> samples() {
  std::vector<double> s;
  for (int k = -4; k <= 4; ++k) s.push_back(k / 4.0);
  return s;
}

// (zeta, zeta, d, c) with d^2 = c^3 and (a, zeta, zeta, c) with a^2 = c^3, both inside
// {x1^2 - x2^2 + x3^2 - x4^3 = 0}.
PointCloud first_family(double c) {
  std::vector<CPoint> pts;
  const double d = std::pow(c, 1.5);
  for (double t : samples()) pts.push_back({t, t, d, c});
  return PointCloud(pts);
}

PointCloud both_families(double c) {
  std::vector<CPoint> pts = first_family(c).points();
  const double a = std::pow(c, 1.5);
  for (double t : samples()) pts.push_back({a, t, t, c});
  return PointCloud(pts);
}

}  // namespace

TEST(Hausdorff, SinglePoints) {
  const auto zero = cloud({{0, 0}}), one = cloud({{1, 0}});
  EXPECT_DOUBLE_EQ(hausdorff_distance(zero, one), 1.0);
  EXPECT_DOUBLE_EQ(hausdorff_distance(one, zero), 1.0);
}

TEST(Hausdorff, DirectedDistancesOfNestedSets) {
  const auto both = cloud({{0, 0}, {1, 0}}), zero = cloud({{0, 0}});
  EXPECT_DOUBLE_EQ(hausdorff_distance(both, zero), 1.0);
  EXPECT_DOUBLE_EQ(directed_hausdorff(both, zero), 1.0);
  EXPECT_DOUBLE_EQ(directed_hausdorff(zero, both), 0.0);
}

TEST(Hausdorff, ImaginaryPartsCount) {
  const PointCloud a({CPoint{{0, 0}, {0, 0}}}), b({CPoint{{0, 3}, {0, 4}}});
  EXPECT_DOUBLE_EQ(hausdorff_distance(a, b), 5.0);
}

TEST(Hausdorff, MetricAxiomsOnRandomClouds) {
  RandomSource rs(61);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = static_cast<std::size_t>(rs.integer(1, 3));
    const auto A = random_cloud(rs, n, static_cast<std::size_t>(rs.integer(1, 20)), 2.0);
    const auto B = random_cloud(rs, n, static_cast<std::size_t>(rs.integer(1, 20)), 2.0);
    const auto C = random_cloud(rs, n, static_cast<std::size_t>(rs.integer(1, 20)), 2.0);
    const double ab = hausdorff_distance(A, B), ba = hausdorff_distance(B, A);
    EXPECT_EQ(hausdorff_distance(A, A), 0.0);
    EXPECT_NEAR(ab, ba, 1e-12);
    EXPECT_GT(ab, 0.0);
    EXPECT_LE(ab, hausdorff_distance(A, C) + hausdorff_distance(C, B) + 1e-12);
  }
}

TEST(Hausdorff, AgreesWithBruteForce) {
  RandomSource rs(62);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = static_cast<std::size_t>(rs.integer(1, 4));
    const auto A = random_cloud(rs, n, static_cast<std::size_t>(rs.integer(1, 200)), 1.0);
    const auto B = random_cloud(rs, n, static_cast<std::size_t>(rs.integer(1, 200)), 1.5);
    EXPECT_NEAR(hausdorff_distance(A, B), hausdorff_distance_bruteforce(A, B), 1e-12);
  }
}

TEST(PointCloud, ConstructionRules) {
  EXPECT_EQ(cloud({{1, 2}, {1, 2}, {0, 0}}).size(), 2U);
  EXPECT_THROW(PointCloud(std::vector<CPoint>{}), InvalidInput);
  EXPECT_THROW(PointCloud(std::vector<CPoint>{cpoint({0, 0}), cpoint({0, 0, 1, 1})}), DimensionMismatch);
}

TEST(PointCloud, CsvRoundTrip) {
  RandomSource rs(63);
  const auto A = random_cloud(rs, 2, 17, 3.0);
  std::stringstream ss;
  write_point_cloud_csv(ss, A);
  const auto back = read_point_cloud_csv(ss);
  EXPECT_EQ(back.points(), A.points());

  std::istringstream with_header("re1,im1\n0.5,-1\n");
  const auto h = read_point_cloud_csv(with_header);
  EXPECT_EQ(h.size(), 1U);
  EXPECT_EQ(h.points()[0][0], std::complex<double>(0.5, -1.0));
  EXPECT_EQ(h.dim(), 1U);

  std::istringstream odd("1,2,3\n");
  EXPECT_THROW(read_point_cloud_csv(odd), InvalidInput);
}

TEST(PointCloud, DataFiles) {
  std::ifstream zero(data_path("cloud_zero.csv")), one(data_path("cloud_one.csv"));
  ASSERT_TRUE(zero && one);
  EXPECT_DOUBLE_EQ(hausdorff_distance(read_point_cloud_csv(zero), read_point_cloud_csv(one)), 1.0);
}

TEST(LimitContainment, ShrinkingSubsets) {
  std::vector<PointCloud> a, b;
  for (int j = 1; j <= 8; ++j) {
    a.push_back(cloud({{1.0 / j, 0}}));
    b.push_back(cloud({{0, 0}, {1.0 / j, 0}}));
  }
  // d_H({1/j}, {0}) = 1/j <= 4 * 2^-j fails for j >= 5
  const auto r = limit_containment_check(a, b, cloud({{0, 0}}), cloud({{0, 0}}), 4.0);
  EXPECT_TRUE(r.contained);
  EXPECT_FALSE(r.hypotheses_hold);
  EXPECT_EQ(r.hypothesis_violations.front(), 5U);
  EXPECT_NEAR(r.distance_a[1], 0.5, 1e-15);

  const auto tight = limit_containment_check(std::vector<PointCloud>(a.begin(), a.begin() + 4),
                                             std::vector<PointCloud>(b.begin(), b.begin() + 4), cloud({{0, 0}}),
                                             cloud({{0, 0}}), 4.0);
  EXPECT_TRUE(tight.hypotheses_hold);
  EXPECT_TRUE(tight.contained);
}

TEST(LimitContainment, MmzLinesAtPositiveHeight) {
  std::vector<PointCloud> a, b;
  for (int j = 1; j <= 5; ++j) {
    a.push_back(first_family(1.0 / j));
    b.push_back(both_families(1.0 / j));
  }
  const auto r = limit_containment_check(a, b, first_family(0.0), both_families(0.0), 8.0);
  EXPECT_TRUE(r.hypotheses_hold) << r.hypothesis_violations.size();
  EXPECT_TRUE(r.contained);
  EXPECT_EQ(r.containment_gap, 0.0);
  for (std::size_t k = 1; k < r.distance_a.size(); ++k) EXPECT_LT(r.distance_a[k], r.distance_a[k - 1]);
}

TEST(LimitContainment, DetectsNonContainment) {
  const auto r = limit_containment_check({cloud({{1, 0}})}, {cloud({{1, 0}})}, cloud({{1, 0}}), cloud({{0, 0}}), 4.0);
  EXPECT_FALSE(r.contained);
  EXPECT_DOUBLE_EQ(r.containment_gap, 1.0);
  EXPECT_THROW(limit_containment_check({}, {}, cloud({{0, 0}}), cloud({{0, 0}}), 1.0), InvalidInput);
  EXPECT_THROW(limit_containment_check({cloud({{0, 0}})}, {}, cloud({{0, 0}}), cloud({{0, 0}}), 1.0),
               DimensionMismatch);
}

TEST(Closedness, MmzSequenceTowardLinePoint) {
  const auto rho = mmz();
  std::vector<CPoint> seq;
  for (int j = 8; j <= 32; j += 8) {
    const double c = 1.0 / j;
    seq.push_back({std::sqrt(1.0 + c * c * c), 1.0, 0.0, c});
  }
  SearchConfig cfg;
  cfg.kappas = {1, 2};
  const auto r = closedness_experiment(rho, seq, cpoint({1, 1, 0, 0}), cfg);
  EXPECT_TRUE(r.hypothesis_holds);
  EXPECT_EQ(r.sequence_verdicts.size(), seq.size());
  EXPECT_EQ(r.limit_verdict, Verdict::In);
  EXPECT_NEAR(r.tail_distance, 1.0 / 32, 1e-3);
}

TEST(Closedness, ConeSequenceAtOrigin) {
  const auto rho = cone();
  std::vector<CPoint> seq;
  for (int j = 1; j <= 16; ++j) seq.push_back({1.0 / j, 1.0 / j});
  SearchConfig cfg;
  cfg.kappas = {1, 2};
  const auto r = closedness_experiment(rho, seq, cpoint({0, 0}), cfg, false);
  EXPECT_TRUE(r.sequence_verdicts.empty());
  EXPECT_EQ(r.limit_verdict, Verdict::In);
}

TEST(Closedness, ConstantSequence) {
  const auto rho = mmz();
  const CPoint p = cpoint({1, 1, 0, 0});
  SearchConfig cfg;
  cfg.kappas = {1};
  const auto r = closedness_experiment(rho, {p, p}, p, cfg);
  EXPECT_EQ(r.tail_distance, 0.0);
  EXPECT_EQ(r.limit_verdict, Verdict::In);
}

TEST(Closedness, RejectsDivergentSequence) {
  const auto rho = cone();
  std::vector<CPoint> seq{{0.1, 0.1}, {1.0, 1.0}};
  EXPECT_THROW(closedness_experiment(rho, seq, cpoint({0, 0}), SearchConfig{}), InvalidInput);
}
