// SPDX-FileCopyrightText: 2026 The pcqa Authors
// SPDX-License-Identifier: Apache-2.0

#include "pcqa/error.hpp"
#include "pcqa/metrics.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

#include <Eigen/Geometry>
#include <gtest/gtest.h>

#include <cmath>
#include <random>

namespace pcqa {
namespace {

PointCloud cloud_of(std::initializer_list<Vec3> pts) {
  PointCloud c;
  c.points = pts;
  return c;
}

template <class F>
ErrorCategory category_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.category();
  }
  ADD_FAILURE() << "no pcqa::Error thrown";
  return ErrorCategory::InvalidArgument;
}

// Fibonacci sphere, 1000 points, analytic normals; values frozen from an independent NumPy run.
constexpr double kSphereMnn = 0.11025145618170584;
constexpr double kSphereAnn = 0.10662177979391968;
constexpr double kSphereAnnK10 = 0.15736148905801606;
constexpr double kSphereApdK10 = 0.15674935613100205;
constexpr double kSphereApdK10Squared = 0.024570360647483712;

// ---- names -----------------------------------------------------------------

TEST(MetricNames, PeakLabelsRoundTrip) {
  const std::vector<PeakSpec> peaks = {
      PeakSpec::precision(),
      PeakSpec::largest_diagonal(),
      PeakSpec::intrinsic(EstimatorSpec::mnn()),
      PeakSpec::intrinsic(EstimatorSpec::ann()),
      PeakSpec::intrinsic(EstimatorSpec::ann_k()),
      PeakSpec::resolution_adaptive(EstimatorSpec::ann()),
      PeakSpec::resolution_adaptive(EstimatorSpec::apd_k(10)),
  };
  for (const PeakSpec& p : peaks) {
    const auto parsed = parse_peak_label(to_string(p));
    ASSERT_TRUE(parsed) << to_string(p);
    EXPECT_EQ(*parsed, p);
  }
  EXPECT_EQ(to_string(PeakSpec::precision()), "P");
  EXPECT_EQ(to_string(PeakSpec::largest_diagonal()), "LD");
  EXPECT_FALSE(parse_peak_label("nonsense"));
}

TEST(MetricNames, EnumParsers) {
  EXPECT_EQ(parse_error_kind("po2pl"), ErrorKind::Po2Pl);
  EXPECT_EQ(parse_error_kind("po2po"), ErrorKind::Po2Po);
  EXPECT_EQ(parse_estimator("apdk"), Estimator::ApdK);
  EXPECT_EQ(parse_pooling("min"), Pooling::Min);
  EXPECT_EQ(parse_apd_mode("strict-squared"), ApdMode::StrictSquared);
  EXPECT_FALSE(parse_estimator("knn"));
}

TEST(MetricNames, ResolutionAdaptiveRejectsMnn) {
  EXPECT_EQ(category_of([] { validate(PeakSpec::resolution_adaptive(EstimatorSpec::mnn())); }),
            ErrorCategory::InvalidArgument);
  EXPECT_THROW(ra_psnr(fixtures::random_cloud(20, 1), fixtures::random_cloud(20, 2), ErrorKind::Po2Po,
                       EstimatorSpec::mnn(), {.bit_depth = 4}),
               Error);
}

// ---- error terms -----------------------------------------------------------

TEST(DirectionalMse, IdenticalCloudsAreZero) {
  const PointCloud c = fixtures::random_cloud(100, 4);
  EXPECT_EQ(directional_mse(c, c, ErrorKind::Po2Po), 0.0);
}

TEST(DirectionalMse, ThreeFourFive) {
  const PointCloud a = cloud_of({Vec3(0, 0, 0)});
  const PointCloud b = cloud_of({Vec3(3, 4, 0)});
  EXPECT_DOUBLE_EQ(directional_mse(a, b, ErrorKind::Po2Po), 25.0);
  EXPECT_DOUBLE_EQ(directional_mse(b, a, ErrorKind::Po2Po), 25.0);
}

TEST(DirectionalMse, InPlaneDisplacementHasNoPlaneError) {
  const PointCloud a = cloud_of({Vec3(0, 0, 0)});
  PointCloud b = cloud_of({Vec3(1, 0, 0)});
  b.normals = std::vector<Vec3>{Vec3::UnitZ()};
  EXPECT_EQ(directional_mse(a, b, ErrorKind::Po2Pl), 0.0);
  EXPECT_EQ(directional_mse(a, b, ErrorKind::Po2Po), 1.0);
}

TEST(DirectionalMse, Po2PlNeedsTargetNormals) {
  const PointCloud a = fixtures::random_cloud(10, 1);
  EXPECT_EQ(category_of([&] { directional_mse(a, a, ErrorKind::Po2Pl); }), ErrorCategory::MissingNormals);
}

TEST(DirectionalMse, MatchesOracle) {
  const PointCloud a = fixtures::random_cloud(400, 5);
  PointCloud b = fixtures::random_cloud(350, 6);
  b.normals = fixtures::random_normals(b.size(), 7);
  EXPECT_LE(oracle::relative_error(directional_mse(a, b, ErrorKind::Po2Po), oracle::mse(a.points, b.points, nullptr)),
            1e-12);
  EXPECT_LE(oracle::relative_error(directional_mse(a, b, ErrorKind::Po2Pl),
                                   oracle::mse(a.points, b.points, &*b.normals)),
            1e-12);
}

// ---- estimators ------------------------------------------------------------

TEST(LargestDiagonal, UnitCubeAndBox) {
  EXPECT_DOUBLE_EQ(largest_diagonal(fixtures::grid(2, 2, 2, 1.0)), std::sqrt(3.0));
  EXPECT_DOUBLE_EQ(largest_diagonal(cloud_of({Vec3(0, 0, 0), Vec3(2, 3, 6)})), 7.0);
  EXPECT_EQ(largest_diagonal(cloud_of({Vec3(1, 1, 1)})), 0.0);
}

TEST(Mnn, RegularGrid) {
  EXPECT_DOUBLE_EQ(mnn(fixtures::grid(4, 4, 4, 2.0)), 2.0);
}

TEST(Mnn, TracksTheLoneliestPoint) {
  PointCloud g = fixtures::grid(4, 4, 4, 1.0);
  g.points.emplace_back(3, 3, 6);  // 3 above the top corner
  EXPECT_DOUBLE_EQ(mnn(g), 3.0);
  EXPECT_DOUBLE_EQ(mnn(cloud_of({Vec3(0, 0, 0), Vec3(0, 7, 0)})), 7.0);
}

TEST(Mnn, NeedsTwoPoints) {
  EXPECT_EQ(category_of([] { mnn(cloud_of({Vec3(0, 0, 0)})); }), ErrorCategory::CloudTooSmall);
}

TEST(Ann, UnitGridAndPair) {
  EXPECT_DOUBLE_EQ(ann(fixtures::grid(5, 5, 5, 1.0)), 1.0);
  EXPECT_DOUBLE_EQ(ann(cloud_of({Vec3(0, 0, 0), Vec3(3, 0, 0)})), 3.0);
}

TEST(AnnK, KOneIsAnn) {
  const PointCloud c = fixtures::random_cloud(300, 8);
  EXPECT_EQ(ann_k(c, 1), ann(c));
}

TEST(AnnK, InteriorGridSixNeighbors) {
  const PointCloud g = fixtures::grid(3, 3, 3, 1.0);
  const NeighborIndex idx(g);
  const auto hood = idx.k_neighborhood(13, 6);
  double sum = 0.0;
  for (double d : hood.distances) sum += d * d;
  EXPECT_DOUBLE_EQ(std::sqrt(sum / 6.0), 1.0);
}

TEST(AnnK, Preconditions) {
  const PointCloud c = fixtures::random_cloud(5, 2);
  EXPECT_EQ(category_of([&] { ann_k(c, 0); }), ErrorCategory::InvalidArgument);
  EXPECT_EQ(category_of([&] { ann_k(c, 5); }), ErrorCategory::CloudTooSmall);
}

TEST(PlanarDistance, Examples) {
  EXPECT_DOUBLE_EQ(planar_distance(Vec3::Zero(), Vec3::UnitZ(), Vec3(3, 4, 12)), 5.0);
  EXPECT_DOUBLE_EQ(planar_distance(Vec3::Zero(), Vec3::UnitZ(), Vec3(0, 0, 9)), 0.0);
  EXPECT_DOUBLE_EQ(planar_distance(Vec3(1, 1, 1), Vec3::UnitX(), Vec3(5, 1, 2)), 1.0);
  EXPECT_EQ(category_of([] { planar_distance(Vec3::Zero(), Vec3(0, 0, 2), Vec3(1, 0, 0)); }),
            ErrorCategory::InvalidArgument);
}

TEST(ApdK, PlanarGridInteriorMatchesSpacing) {
  const int n = 9;
  const double s = 1.5;
  const PointCloud plane = fixtures::planar_grid(n, s, Vec3::UnitX(), Vec3::UnitY());
  const NeighborIndex idx(plane);
  const auto local = local_apd_k(idx, *plane.normals, 4);
  double sum = 0.0;
  int count = 0;
  for (int i = 1; i + 1 < n; ++i) {
    for (int j = 1; j + 1 < n; ++j) {
      sum += local[static_cast<std::size_t>(i * n + j)];
      ++count;
    }
  }
  EXPECT_NEAR(std::sqrt(sum / count), s, 1e-12);
}

TEST(ApdK, NeighborsAlongTheNormalProjectToZero) {
  PointCloud line;
  for (int i = 0; i < 12; ++i) line.points.emplace_back(0, 0, i);
  line.normals = std::vector<Vec3>(line.size(), Vec3::UnitZ());
  EXPECT_EQ(apd_k(line, 4), 0.0);
  const MetricOptions opts{.bit_depth = 6};
  EXPECT_EQ(category_of([&] {
              psnr(line, line, ErrorKind::Po2Po, PeakSpec::resolution_adaptive(EstimatorSpec::apd_k(4)), opts);
            }),
            ErrorCategory::ZeroPeak);
}

TEST(ApdK, RejectsNonUnitNormals) {
  PointCloud c = fixtures::random_cloud(20, 3);
  const NeighborIndex idx(c);
  std::vector<Vec3> normals(c.size(), Vec3(0, 0, 1.1));
  EXPECT_EQ(category_of([&] { apd_k(idx, normals, 4); }), ErrorCategory::InvalidArgument);
  normals.pop_back();
  EXPECT_EQ(category_of([&] { apd_k(idx, normals, 4); }), ErrorCategory::MissingNormals);
}

TEST(Estimators, SphereMatchesFrozenValues) {
  const PointCloud sphere = fixtures::fibonacci_sphere(1000);
  EXPECT_NEAR(mnn(sphere), kSphereMnn, 1e-12);
  EXPECT_NEAR(ann(sphere), kSphereAnn, 1e-12);
  EXPECT_NEAR(ann_k(sphere, 10), kSphereAnnK10, 1e-12);
  EXPECT_NEAR(apd_k(sphere, 10), kSphereApdK10, 1e-12);
  EXPECT_NEAR(apd_k(sphere, 10, ApdMode::StrictSquared), kSphereApdK10Squared, 1e-13);
}

TEST(Estimators, MatchOracleOnRandomClouds) {
  for (std::uint64_t seed = 40; seed < 44; ++seed) {
    PointCloud c = fixtures::random_cloud(250, seed);
    c.normals = fixtures::random_normals(c.size(), seed + 100);
    EXPECT_LE(oracle::relative_error(mnn(c), oracle::mnn(c.points)), 1e-12);
    EXPECT_LE(oracle::relative_error(ann(c), oracle::ann(c.points)), 1e-12);
    EXPECT_LE(oracle::relative_error(ann_k(c, 10), oracle::ann_k(c.points, 10)), 1e-12);
    EXPECT_LE(oracle::relative_error(apd_k(c, 10), oracle::apd_k(c.points, *c.normals, 10)), 1e-12);
  }
}

TEST(Estimators, ApdNeverExceedsAnnK) {
  const PointCloud c = fixtures::random_cloud(300, 9);
  for (std::size_t k : {1u, 5u, 10u}) EXPECT_LE(apd_k(c, k), ann_k(c, k) * (1 + 1e-12));
}

TEST(Resolution, DispatchesByEstimator) {
  const PointCloud sphere = fixtures::fibonacci_sphere(1000);
  EXPECT_EQ(resolution(sphere, EstimatorSpec::mnn()), mnn(sphere));
  EXPECT_EQ(resolution(sphere, EstimatorSpec::ann()), ann(sphere));
  EXPECT_EQ(resolution(sphere, EstimatorSpec::ann_k(10)), ann_k(sphere, 10));
  EXPECT_EQ(resolution(sphere, EstimatorSpec::apd_k(10)), apd_k(sphere, 10));
}

TEST(PreparedCloud, EstimatesNormalsOnceAndReportsSource) {
  const PreparedCloud bare(fixtures::random_cloud(50, 2));
  EXPECT_EQ(bare.normal_source(), NormalSource::Estimated);
  const auto first = bare.normals();
  EXPECT_EQ(first.data(), bare.normals().data());
  const PreparedCloud supplied(fixtures::fibonacci_sphere(100));
  EXPECT_EQ(supplied.normal_source(), NormalSource::Supplied);
}

TEST(PreparedCloud, NormalFailureIsRepeatable) {
  const PreparedCloud tiny(fixtures::random_cloud(5, 2), 10);
  EXPECT_EQ(category_of([&] { tiny.normals(); }), ErrorCategory::CloudTooSmall);
  EXPECT_EQ(category_of([&] { tiny.normals(); }), ErrorCategory::CloudTooSmall);
}

// ---- peaks and PSNR --------------------------------------------------------

TEST(DensityCoefficient, Examples) {
  EXPECT_DOUBLE_EQ(density_coefficient(10, 1.0), 1023.0);
  EXPECT_DOUBLE_EQ(density_coefficient(8, 5.0), 51.0);
  EXPECT_EQ(category_of([] { density_coefficient(8, 0.0); }), ErrorCategory::ZeroPeak);
}

TEST(Psnr, IdenticalCloudsAreInfinite) {
  const PointCloud c = fixtures::random_cloud(100, 3);
  const auto r = psnr(c, c, ErrorKind::Po2Po, PeakSpec::largest_diagonal());
  EXPECT_TRUE(r.infinite_quality());
  EXPECT_FALSE(r.psnr_ab);
  EXPECT_FALSE(r.psnr_ba);
  EXPECT_EQ(r.mse_ab, 0.0);
}

TEST(Psnr, SinglePointPrecisionPeak) {
  PointCloud ref = cloud_of({Vec3(0, 0, 0)});
  ref.bit_depth = 10;
  const auto r = psnr(ref, cloud_of({Vec3(1, 0, 0)}), ErrorKind::Po2Po, PeakSpec::precision());
  ASSERT_TRUE(r.psnr_pooled);
  EXPECT_NEAR(*r.psnr_pooled, 64.968725221439826, 1e-9);
  EXPECT_EQ(r.bit_depth, 10);
  EXPECT_DOUBLE_EQ(r.peak_value, std::sqrt(3.0) * 1023.0);
}

TEST(Psnr, MissingBitDepth) {
  const PointCloud c = fixtures::random_cloud(20, 1);
  const PointCloud d = fixtures::random_cloud(20, 2);
  EXPECT_EQ(category_of([&] { psnr(c, d, ErrorKind::Po2Po, PeakSpec::precision()); }),
            ErrorCategory::MissingBitDepth);
  EXPECT_EQ(category_of([&] {
              psnr(c, d, ErrorKind::Po2Po, PeakSpec::resolution_adaptive(EstimatorSpec::ann()));
            }),
            ErrorCategory::MissingBitDepth);
  EXPECT_NO_THROW(psnr(c, d, ErrorKind::Po2Po, PeakSpec::intrinsic(EstimatorSpec::ann())));
}

TEST(Psnr, ZeroPeakOnSinglePointLd) {
  const PointCloud one = cloud_of({Vec3(1, 2, 3)});
  EXPECT_EQ(category_of([&] { psnr(one, cloud_of({Vec3(0, 0, 0)}), ErrorKind::Po2Po, PeakSpec::largest_diagonal()); }),
            ErrorCategory::ZeroPeak);
}

TEST(Psnr, IntrinsicUsesSquaredResolution) {
  const PointCloud ref = fixtures::grid(4, 4, 4, 2.0);
  PointCloud deg = ref;
  for (auto& p : deg.points) p.x() += 0.5;
  const auto r = psnr(ref, deg, ErrorKind::Po2Po, PeakSpec::intrinsic(EstimatorSpec::ann()));
  EXPECT_DOUBLE_EQ(r.numerator, 4.0);
  EXPECT_DOUBLE_EQ(*r.psnr_ab, 10.0 * std::log10(4.0 / 0.25));
}

TEST(RaPsnr, ComposesResolutionAndPrecision) {
  PointCloud ref = fixtures::grid(4, 4, 4, 2.0);
  ref.bit_depth = 10;
  PointCloud deg = ref;
  for (auto& p : deg.points) p.y() += 0.5;
  const auto r = ra_psnr(ref, deg, ErrorKind::Po2Po, EstimatorSpec::ann());
  EXPECT_DOUBLE_EQ(r.numerator, 3.0 * 2.0 * 1023.0);
  EXPECT_NEAR(*r.psnr_pooled, 10.0 * std::log10(3.0 * 2.0 * 1023.0 / 0.25), 1e-12);
  EXPECT_NEAR(*r.psnr_pooled, ra_psnr_db_density_form(10, 2.0, 0.25), 1e-12);
}

TEST(RaPsnr, DensityAndResolutionFormsAgree) {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<int> b(1, 16);
  std::uniform_real_distribution<double> logu(-3.0, 3.0);
  for (int i = 0; i < 200; ++i) {
    const int depth = b(rng);
    const double r = std::pow(10.0, logu(rng));
    const double mse = std::pow(10.0, logu(rng));
    EXPECT_NEAR(ra_psnr_db_density_form(depth, r, mse), ra_psnr_db_resolution_form(depth, r, mse), 1e-12);
  }
}

TEST(RaPsnr, DoublingResolutionAddsThreeDb) {
  const double base = ra_psnr_db_resolution_form(10, 1.0, 0.3);
  EXPECT_NEAR(ra_psnr_db_resolution_form(10, 2.0, 0.3) - base, 10.0 * std::log10(2.0), 1e-12);
}

TEST(RaPsnr, AnnKOneEqualsAnn) {
  PointCloud ref = fixtures::random_cloud(200, 5, 100.0);
  ref.bit_depth = 7;
  const PointCloud deg = fixtures::random_cloud(180, 6, 100.0);
  const auto a = ra_psnr(ref, deg, ErrorKind::Po2Po, EstimatorSpec::ann());
  const auto b = ra_psnr(ref, deg, ErrorKind::Po2Po, EstimatorSpec::ann_k(1));
  EXPECT_EQ(a.psnr_pooled, b.psnr_pooled);
}

// ---- invariants ------------------------------------------------------------

Eigen::Matrix3d random_rotation(std::mt19937_64& rng) {
  const Vec3 axis = fixtures::random_unit(rng);
  std::uniform_real_distribution<double> angle(0.0, 6.283185307179586);
  return Eigen::AngleAxisd(angle(rng), axis).toRotationMatrix();
}

PointCloud transformed(const PointCloud& c, const Eigen::Matrix3d& R, const Vec3& t, double scale = 1.0) {
  PointCloud out = c;
  for (auto& p : out.points) p = scale * (R * p) + t;
  if (out.normals) {
    for (auto& n : *out.normals) n = R * n;
  }
  return out;
}

TEST(Invariants, RigidMotion) {
  std::mt19937_64 rng(99);
  const PointCloud ref = fixtures::random_cloud(300, 10);
  const PointCloud deg = fixtures::random_cloud(280, 11);
  const Eigen::Matrix3d R = random_rotation(rng);
  const Vec3 t(13.0, -4.0, 7.5);
  const PointCloud ref_m = transformed(ref, R, t);
  const PointCloud deg_m = transformed(deg, R, t);
  const std::vector<PeakSpec> peaks = {PeakSpec::largest_diagonal(), PeakSpec::intrinsic(EstimatorSpec::ann()),
                                       PeakSpec::intrinsic(EstimatorSpec::ann_k(10)),
                                       PeakSpec::intrinsic(EstimatorSpec::apd_k(10))};
  for (const auto& peak : peaks) {
    for (ErrorKind kind : {ErrorKind::Po2Po, ErrorKind::Po2Pl}) {
      const double before = *psnr(ref, deg, kind, peak).psnr_pooled;
      const double after = *psnr(ref_m, deg_m, kind, peak).psnr_pooled;
      // LD uses the axis-aligned box, which rotation changes.
      if (peak.kind == PeakKind::LargestDiagonal) continue;
      EXPECT_NEAR(before, after, 1e-9) << to_string(peak);
    }
  }
}

TEST(Invariants, TranslationOnlyForLd) {
  const PointCloud ref = fixtures::random_cloud(200, 12);
  const PointCloud deg = fixtures::random_cloud(200, 13);
  const Vec3 t(-3.0, 8.0, 2.0);
  const auto I = Eigen::Matrix3d::Identity();
  EXPECT_NEAR(*psnr(ref, deg, ErrorKind::Po2Po, PeakSpec::largest_diagonal()).psnr_pooled,
              *psnr(transformed(ref, I, t), transformed(deg, I, t), ErrorKind::Po2Po, PeakSpec::largest_diagonal())
                   .psnr_pooled,
              1e-9);
}

TEST(Invariants, UniformScaleForScaleFreePeaks) {
  const PointCloud ref = fixtures::random_cloud(200, 14);
  const PointCloud deg = fixtures::random_cloud(220, 15);
  const auto I = Eigen::Matrix3d::Identity();
  const PointCloud ref_s = transformed(ref, I, Vec3::Zero(), 3.7);
  const PointCloud deg_s = transformed(deg, I, Vec3::Zero(), 3.7);
  for (const PeakSpec& peak : {PeakSpec::largest_diagonal(), PeakSpec::intrinsic(EstimatorSpec::ann()),
                               PeakSpec::intrinsic(EstimatorSpec::apd_k(10))}) {
    EXPECT_NEAR(*psnr(ref, deg, ErrorKind::Po2Po, peak).psnr_pooled,
                *psnr(ref_s, deg_s, ErrorKind::Po2Po, peak).psnr_pooled, 1e-9);
  }
}

TEST(Invariants, PlaneErrorNeverBelowPointError) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const PointCloud ref = fixtures::random_cloud(150, 200 + seed);
    const PointCloud deg = fixtures::random_cloud(150, 300 + seed);
    const auto d1 = psnr(ref, deg, ErrorKind::Po2Po, PeakSpec::largest_diagonal());
    const auto d2 = psnr(ref, deg, ErrorKind::Po2Pl, PeakSpec::largest_diagonal());
    EXPECT_GE(*d2.psnr_ab, *d1.psnr_ab);
    EXPECT_GE(*d2.psnr_ba, *d1.psnr_ba);
  }
}

TEST(Pooling, MaxAndMin) {
  EXPECT_EQ(pool(10.0, 12.0, Pooling::Max), 12.0);
  EXPECT_EQ(pool(10.0, 12.0, Pooling::Min), 10.0);
  EXPECT_EQ(pool(std::nullopt, 12.0, Pooling::Max), std::nullopt);
  EXPECT_EQ(pool(std::nullopt, 12.0, Pooling::Min), 12.0);
  EXPECT_EQ(pool(std::nullopt, std::nullopt, Pooling::Min), std::nullopt);
}

TEST(Pooling, PooledIsMaxOfDirections) {
  const PointCloud ref = fixtures::random_cloud(200, 16);
  PointCloud deg = ref;
  deg.points.resize(120);  // subset: deg -> ref is exact, ref -> deg is not
  const auto r = psnr(ref, deg, ErrorKind::Po2Po, PeakSpec::largest_diagonal());
  EXPECT_EQ(r.mse_ba, 0.0);
  EXPECT_TRUE(r.psnr_ab);
  EXPECT_TRUE(r.infinite_quality());
  const auto m = psnr(ref, deg, ErrorKind::Po2Po, PeakSpec::largest_diagonal(), {.pooling = Pooling::Min});
  EXPECT_EQ(m.psnr_pooled, m.psnr_ab);

  const PointCloud other = fixtures::random_cloud(200, 17);
  const auto both = psnr(ref, other, ErrorKind::Po2Po, PeakSpec::largest_diagonal());
  EXPECT_EQ(*both.psnr_pooled, std::max(*both.psnr_ab, *both.psnr_ba));
}

TEST(Psnr, ReportsNormalSources) {
  const PointCloud sphere = fixtures::fibonacci_sphere(200);
  PointCloud bare = fixtures::fibonacci_sphere(190);
  bare.normals.reset();
  const auto r = psnr(sphere, bare, ErrorKind::Po2Pl, PeakSpec::largest_diagonal());
  EXPECT_EQ(r.reference_normals, NormalSource::Supplied);
  EXPECT_EQ(r.degraded_normals, NormalSource::Estimated);
  const auto p = psnr(sphere, bare, ErrorKind::Po2Po, PeakSpec::largest_diagonal());
  EXPECT_EQ(p.reference_normals, NormalSource::None);
}

}  // namespace
}  // namespace pcqa
