// SPDX-FileCopyrightText: 2026 The pcqa Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PCQA_METRICS_HPP
#define PCQA_METRICS_HPP

#include "pcqa/neighbor_index.hpp"
#include "pcqa/normals.hpp"
#include "pcqa/point_cloud.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pcqa {

inline constexpr std::size_t kDefaultEstimatorK = 10;

// ---------------------------------------------------------------------------
// Configuration
// ---------------------------------------------------------------------------

/// Po2Po: squared length of the nearest-neighbor error vector (D1).
/// Po2Pl: squared projection of that vector on the target point's normal (D2).
enum class ErrorKind { Po2Po, Po2Pl };

/// Resolution estimators. All of them exclude a point from its own
/// neighborhood.
enum class Estimator {
  Mnn,   ///< maximum nearest-neighbor distance
  Ann,   ///< RMS nearest-neighbor distance
  AnnK,  ///< RMS distance over k nearest neighbors
  ApdK,  ///< RMS tangent-plane distance over k nearest neighbors
};

struct EstimatorSpec {
  Estimator kind = Estimator::Ann;
  std::size_t k = 1;  ///< read only by AnnK and ApdK

  static EstimatorSpec mnn() { return {Estimator::Mnn, 1}; }
  static EstimatorSpec ann() { return {Estimator::Ann, 1}; }
  static EstimatorSpec ann_k(std::size_t k = kDefaultEstimatorK) { return {Estimator::AnnK, k}; }
  static EstimatorSpec apd_k(std::size_t k = kDefaultEstimatorK) { return {Estimator::ApdK, k}; }

  bool uses_k() const noexcept { return kind == Estimator::AnnK || kind == Estimator::ApdK; }
  friend bool operator==(const EstimatorSpec& a, const EstimatorSpec& b) noexcept {
    return a.kind == b.kind && (!a.uses_k() || a.k == b.k);
  }
};

enum class PeakKind { Precision, LargestDiagonal, Resolution };

/// Normalizer feeding the PSNR numerator.
///
///   Precision        3 p_c^2          p_c = 2^b - 1
///   LargestDiagonal  LD^2             LD of the reference bounding box
///   Resolution       r^2              r estimated on the reference
///   Resolution + density_adaptive     3 r p_c   (RA-PSNR)
struct PeakSpec {
  PeakKind kind = PeakKind::Precision;
  EstimatorSpec estimator{};  ///< read only when kind == Resolution
  bool density_adaptive = false;

  static PeakSpec precision() { return {PeakKind::Precision, {}, false}; }
  static PeakSpec largest_diagonal() { return {PeakKind::LargestDiagonal, {}, false}; }
  static PeakSpec intrinsic(EstimatorSpec e) { return {PeakKind::Resolution, e, false}; }
  static PeakSpec resolution_adaptive(EstimatorSpec e) { return {PeakKind::Resolution, e, true}; }

  bool needs_bit_depth() const noexcept { return kind == PeakKind::Precision || density_adaptive; }
  friend bool operator==(const PeakSpec& a, const PeakSpec& b) noexcept {
    if (a.kind != b.kind || a.density_adaptive != b.density_adaptive) return false;
    return a.kind != PeakKind::Resolution || a.estimator == b.estimator;
  }
};

/// Throws Error(InvalidArgument) for k == 0 or density_adaptive on a
/// non-resolution peak.
void validate(const PeakSpec& peak);

/// Directional PSNRs combine by max (default) or by min, the convention of
/// MPEG's pc_error, which keeps the larger error.
enum class Pooling { Max, Min };

/// ApdK as a length (root of the mean squared planar distance) or, for
/// comparison, the unrooted mean squared planar distance.
enum class ApdMode { Rms, StrictSquared };

enum class NormalSource { None, Supplied, Estimated };

struct MetricOptions {
  Pooling pooling = Pooling::Max;
  std::size_t normal_k = kDefaultNormalK;
  ApdMode apd_mode = ApdMode::Rms;
  /// Overrides the reference cloud's bit_depth for Precision and RA peaks.
  std::optional<int> bit_depth;
};

// ---------------------------------------------------------------------------
// Names used by the CLI and report files
// ---------------------------------------------------------------------------

std::string_view to_string(ErrorKind kind) noexcept;     // "po2po" | "po2pl"
std::string_view to_string(Estimator kind) noexcept;     // "mnn" | "ann" | "annk" | "apdk"
std::string_view to_string(Pooling pooling) noexcept;    // "max" | "min"
std::string_view to_string(ApdMode mode) noexcept;       // "rms" | "strict-squared"
std::string_view to_string(NormalSource source) noexcept;
/// Compact label: "P", "LD", "I-ANN", "RA-APDk", ...
std::string to_string(const PeakSpec& peak);

std::optional<ErrorKind> parse_error_kind(std::string_view s);
std::optional<Estimator> parse_estimator(std::string_view s);
std::optional<Pooling> parse_pooling(std::string_view s);
std::optional<ApdMode> parse_apd_mode(std::string_view s);
std::optional<NormalSource> parse_normal_source(std::string_view s);
/// Inverse of to_string(PeakSpec); k defaults to kDefaultEstimatorK for
/// AnnK/ApdK and may be overridden by the caller afterwards.
std::optional<PeakSpec> parse_peak_label(std::string_view s);

// ---------------------------------------------------------------------------
// Prepared inputs
// ---------------------------------------------------------------------------

/// A cloud bundled with its neighbor index and normals.
///
/// Normals are the cloud's own when present, otherwise PCA estimates computed
/// on first use with `normal_k` neighbors. Safe to share between threads.
class PreparedCloud {
 public:
  explicit PreparedCloud(PointCloud cloud, std::size_t normal_k = kDefaultNormalK);

  const PointCloud& cloud() const noexcept { return *cloud_; }
  const NeighborIndex& index() const noexcept { return index_; }
  std::size_t normal_k() const noexcept { return normal_k_; }

  /// Throws Error(CloudTooSmall) when normals must be estimated but the
  /// cloud has fewer than normal_k + 1 points.
  std::span<const Vec3> normals() const;
  NormalSource normal_source() const noexcept;

 private:
  struct NormalCache;
  std::shared_ptr<const PointCloud> cloud_;
  NeighborIndex index_;
  std::size_t normal_k_;
  std::shared_ptr<NormalCache> normal_cache_;
};

// ---------------------------------------------------------------------------
// Errors and estimators
// ---------------------------------------------------------------------------

/// Mean over points of `a` of the (projected, for Po2Pl) squared distance to
/// the nearest neighbor in `b`. Po2Pl projects on the normal of that
/// neighbor, so it needs normals on `b`.
double directional_mse(const PointCloud& a, const PointCloud& b, ErrorKind kind);
double directional_mse(const PreparedCloud& a, const PreparedCloud& b, ErrorKind kind);

/// Squared error of one correspondence: |e|^2 or (e . n)^2.
double point_error(const Vec3& error, const Vec3& target_normal, ErrorKind kind) noexcept;

/// Norm of the bounding-box diagonal. 0 for a single point.
double largest_diagonal(const PointCloud& cloud);

double mnn(const NeighborIndex& index);
double mnn(const PointCloud& cloud);

double ann(const NeighborIndex& index);
double ann(const PointCloud& cloud);

/// ann_k(index, 1) == ann(index) exactly.
double ann_k(const NeighborIndex& index, std::size_t k);
double ann_k(const PointCloud& cloud, std::size_t k);

/// (neighbor - center) with its component along `unit_normal` removed.
Vec3 planar_distance_vector(const Vec3& center, const Vec3& unit_normal, const Vec3& neighbor) noexcept;

/// Length of planar_distance_vector. Throws Error(InvalidArgument) if
/// |unit_normal| differs from 1 by more than kUnitNormalTolerance.
double planar_distance(const Vec3& center, const Vec3& unit_normal, const Vec3& neighbor);

/// Per-point (1/k) sum_j |PD_ij|^2 over the k nearest neighbors, where PD_ij
/// is the neighbor offset projected on the point's tangent plane.
std::vector<double> local_apd_k(const NeighborIndex& index, std::span<const Vec3> normals, std::size_t k);

/// Mean squared tangent-plane distance over each point's k neighbors,
/// averaged over the cloud and rooted (ApdMode::Rms). Returns 0 when every
/// offset is parallel to its center normal; callers treat that as a zero peak.
double apd_k(const NeighborIndex& index, std::span<const Vec3> normals, std::size_t k,
             ApdMode mode = ApdMode::Rms);
/// Uses the cloud's normals, estimating them with kDefaultNormalK when absent.
double apd_k(const PointCloud& cloud, std::size_t k, ApdMode mode = ApdMode::Rms);

/// Dispatches on the estimator kind; ApdK draws on the prepared normals.
double resolution(const PreparedCloud& cloud, const EstimatorSpec& estimator,
                  ApdMode apd_mode = ApdMode::Rms);
double resolution(const PointCloud& cloud, const EstimatorSpec& estimator,
                  std::size_t normal_k = kDefaultNormalK, ApdMode apd_mode = ApdMode::Rms);

/// mu = (2^b - 1) / r.
double density_coefficient(int bit_depth, double resolution);

// ---------------------------------------------------------------------------
// PSNR
// ---------------------------------------------------------------------------

/// 10 log10(numerator / mse). mse must be > 0.
double psnr_db(double numerator, double mse);

/// RA-PSNR written with the density coefficient, 10 log10(3 p_c^2 / (mu mse)).
double ra_psnr_db_density_form(int bit_depth, double resolution, double mse);
/// RA-PSNR written with the resolution, 10 log10(3 r p_c / mse).
double ra_psnr_db_resolution_form(int bit_depth, double resolution, double mse);

/// Reference-side quantities that fix the PSNR numerator.
struct PeakValue {
  double value = 0;      ///< sqrt(3) p_c, LD, or r (source units)
  double numerator = 0;  ///< the term divided by the MSE inside the log
  std::optional<int> bit_depth;
};

/// Throws Error(MissingBitDepth), Error(ZeroPeak) or estimator errors.
PeakValue compute_peak(const PreparedCloud& reference, const PeakSpec& peak,
                       const MetricOptions& options);

struct MetricResult {
  /// Directional and pooled PSNR in dB; nullopt marks infinite quality (MSE 0).
  std::optional<double> psnr_ab;
  std::optional<double> psnr_ba;
  std::optional<double> psnr_pooled;
  double mse_ab = 0;  ///< reference -> degraded, squared source units
  double mse_ba = 0;  ///< degraded -> reference
  double peak_value = 0;
  double numerator = 0;

  ErrorKind error_kind = ErrorKind::Po2Po;
  PeakSpec peak{};
  Pooling pooling = Pooling::Max;
  ApdMode apd_mode = ApdMode::Rms;
  std::size_t normal_k = kDefaultNormalK;
  std::optional<int> bit_depth;
  NormalSource reference_normals = NormalSource::None;
  NormalSource degraded_normals = NormalSource::None;

  bool infinite_quality() const noexcept { return !psnr_pooled.has_value(); }
  friend bool operator==(const MetricResult&, const MetricResult&) = default;
};

/// Combine two directional PSNRs. An infinite direction wins under Max
/// and loses under Min.
std::optional<double> pool(std::optional<double> ab, std::optional<double> ba, Pooling pooling) noexcept;

/// Symmetric PSNR of `degraded` against `reference`. The peak is evaluated
/// on the reference and shared by both directions.
MetricResult psnr(const PreparedCloud& reference, const PreparedCloud& degraded, ErrorKind kind,
                  const PeakSpec& peak, const MetricOptions& options = {});
MetricResult psnr(const PointCloud& reference, const PointCloud& degraded, ErrorKind kind,
                  const PeakSpec& peak, const MetricOptions& options = {});

/// Assemble a result from precomputed MSEs and peak (no geometry work).
MetricResult assemble_result(double mse_ab, double mse_ba, const PeakValue& peak_value,
                             ErrorKind kind, const PeakSpec& peak, const MetricOptions& options);

/// RA-PSNR with the given resolution estimator (Ann, AnnK or ApdK).
MetricResult ra_psnr(const PointCloud& reference, const PointCloud& degraded, ErrorKind kind,
                     const EstimatorSpec& estimator, const MetricOptions& options = {});

}  // namespace pcqa

#endif  // PCQA_METRICS_HPP
