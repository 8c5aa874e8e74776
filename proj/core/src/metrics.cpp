// SPDX-FileCopyrightText: 2026 The pcqa Authors
// SPDX-License-Identifier: Apache-2.0

#include "pcqa/metrics.hpp"

#include "pcqa/error.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <exception>
#include <mutex>
#include <string>

namespace pcqa {

// ---------------------------------------------------------------------------
// Names
// ---------------------------------------------------------------------------

std::string_view to_string(ErrorKind kind) noexcept {
  return kind == ErrorKind::Po2Po ? "po2po" : "po2pl";
}

std::string_view to_string(Estimator kind) noexcept {
  switch (kind) {
    case Estimator::Mnn: return "mnn";
    case Estimator::Ann: return "ann";
    case Estimator::AnnK: return "annk";
    case Estimator::ApdK: return "apdk";
  }
  return "?";
}

std::string_view to_string(Pooling pooling) noexcept {
  return pooling == Pooling::Max ? "max" : "min";
}

std::string_view to_string(ApdMode mode) noexcept {
  return mode == ApdMode::Rms ? "rms" : "strict-squared";
}

std::string_view to_string(NormalSource source) noexcept {
  switch (source) {
    case NormalSource::None: return "none";
    case NormalSource::Supplied: return "supplied";
    case NormalSource::Estimated: return "estimated";
  }
  return "?";
}

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string_view estimator_label(Estimator kind) {
  switch (kind) {
    case Estimator::Mnn: return "MNN";
    case Estimator::Ann: return "ANN";
    case Estimator::AnnK: return "ANNk";
    case Estimator::ApdK: return "APDk";
  }
  return "?";
}

}  // namespace

std::string to_string(const PeakSpec& peak) {
  switch (peak.kind) {
    case PeakKind::Precision: return "P";
    case PeakKind::LargestDiagonal: return "LD";
    case PeakKind::Resolution:
      return std::string(peak.density_adaptive ? "RA-" : "I-") +
             std::string(estimator_label(peak.estimator.kind));
  }
  return "?";
}

std::optional<ErrorKind> parse_error_kind(std::string_view s) {
  const auto v = lower(s);
  if (v == "po2po" || v == "d1") return ErrorKind::Po2Po;
  if (v == "po2pl" || v == "d2") return ErrorKind::Po2Pl;
  return std::nullopt;
}

std::optional<Estimator> parse_estimator(std::string_view s) {
  const auto v = lower(s);
  if (v == "mnn") return Estimator::Mnn;
  if (v == "ann") return Estimator::Ann;
  if (v == "annk") return Estimator::AnnK;
  if (v == "apdk") return Estimator::ApdK;
  return std::nullopt;
}

std::optional<Pooling> parse_pooling(std::string_view s) {
  const auto v = lower(s);
  if (v == "max") return Pooling::Max;
  if (v == "min") return Pooling::Min;
  return std::nullopt;
}

std::optional<ApdMode> parse_apd_mode(std::string_view s) {
  const auto v = lower(s);
  if (v == "rms") return ApdMode::Rms;
  if (v == "strict-squared") return ApdMode::StrictSquared;
  return std::nullopt;
}

std::optional<NormalSource> parse_normal_source(std::string_view s) {
  const auto v = lower(s);
  if (v == "none") return NormalSource::None;
  if (v == "supplied") return NormalSource::Supplied;
  if (v == "estimated") return NormalSource::Estimated;
  return std::nullopt;
}

std::optional<PeakSpec> parse_peak_label(std::string_view s) {
  const auto v = lower(s);
  if (v == "p") return PeakSpec::precision();
  if (v == "ld") return PeakSpec::largest_diagonal();
  bool ra = false;
  std::string_view rest = v;
  if (rest.starts_with("ra-")) {
    ra = true;
    rest.remove_prefix(3);
  } else if (rest.starts_with("i-")) {
    rest.remove_prefix(2);
  } else {
    return std::nullopt;
  }
  auto est = parse_estimator(rest);
  if (!est) return std::nullopt;
  EstimatorSpec spec{*est, (*est == Estimator::AnnK || *est == Estimator::ApdK) ? kDefaultEstimatorK : 1};
  return ra ? PeakSpec::resolution_adaptive(spec) : PeakSpec::intrinsic(spec);
}

void validate(const PeakSpec& peak) {
  if (peak.density_adaptive && peak.kind != PeakKind::Resolution) {
    throw Error(ErrorCategory::InvalidArgument,
                "density-adaptive scaling applies only to resolution peaks");
  }
  if (peak.density_adaptive && peak.estimator.kind == Estimator::Mnn) {
    throw Error(ErrorCategory::InvalidArgument, "density-adaptive scaling takes ANN, ANNk or APDk");
  }
  if (peak.kind == PeakKind::Resolution && peak.estimator.uses_k() && peak.estimator.k == 0) {
    throw Error(ErrorCategory::InvalidArgument, "estimator k must be at least 1");
  }
}

// ---------------------------------------------------------------------------
// PreparedCloud
// ---------------------------------------------------------------------------

struct PreparedCloud::NormalCache {
  std::once_flag once;
  std::vector<Vec3> estimated;
  std::exception_ptr failure;
};

PreparedCloud::PreparedCloud(PointCloud cloud, std::size_t normal_k)
    : cloud_(std::make_shared<const PointCloud>(std::move(cloud))),
      index_(*cloud_),
      normal_k_(normal_k),
      normal_cache_(std::make_shared<NormalCache>()) {
  validate(*cloud_);
}

std::span<const Vec3> PreparedCloud::normals() const {
  if (cloud_->normals) return *cloud_->normals;
  std::call_once(normal_cache_->once, [this] {
    try {
      normal_cache_->estimated = estimate_normals(*cloud_, index_, normal_k_).normals;
    } catch (...) {
      normal_cache_->failure = std::current_exception();
    }
  });
  if (normal_cache_->failure) std::rethrow_exception(normal_cache_->failure);
  return normal_cache_->estimated;
}

NormalSource PreparedCloud::normal_source() const noexcept {
  return cloud_->normals ? NormalSource::Supplied : NormalSource::Estimated;
}

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

double point_error(const Vec3& error, const Vec3& target_normal, ErrorKind kind) noexcept {
  if (kind == ErrorKind::Po2Po) return error.squaredNorm();
  const double projected = error.dot(target_normal);
  return projected * projected;
}

namespace {

double mse_against(std::span<const Vec3> a, const NeighborIndex& b_index,
                   std::span<const Vec3> b_normals, ErrorKind kind) {
  if (a.empty()) throw Error(ErrorCategory::EmptyCloud, "cannot compute MSE of an empty cloud");
  double sum = 0.0;
  for (const Vec3& p : a) {
    const Neighbor nn = b_index.nearest(p);
    const Vec3 error = b_index.point(nn.index) - p;
    sum += point_error(error, kind == ErrorKind::Po2Pl ? b_normals[nn.index] : Vec3::Zero(), kind);
  }
  return sum / static_cast<double>(a.size());
}

}  // namespace

double directional_mse(const PointCloud& a, const PointCloud& b, ErrorKind kind) {
  if (a.empty() || b.empty()) throw Error(ErrorCategory::EmptyCloud, "cannot compute MSE with an empty cloud");
  if (kind == ErrorKind::Po2Pl) {
    if (!b.normals) throw Error(ErrorCategory::MissingNormals, "point-to-plane error needs normals on the target cloud");
    validate(b);
  }
  const NeighborIndex index(b);
  return mse_against(a.points, index,
                     kind == ErrorKind::Po2Pl ? std::span<const Vec3>(*b.normals) : std::span<const Vec3>{},
                     kind);
}

double directional_mse(const PreparedCloud& a, const PreparedCloud& b, ErrorKind kind) {
  if (a.cloud().empty() || b.cloud().empty()) {
    throw Error(ErrorCategory::EmptyCloud, "cannot compute MSE with an empty cloud");
  }
  const std::span<const Vec3> normals = kind == ErrorKind::Po2Pl ? b.normals() : std::span<const Vec3>{};
  return mse_against(a.cloud().points, b.index(), normals, kind);
}

// ---------------------------------------------------------------------------
// Estimators
// ---------------------------------------------------------------------------

double largest_diagonal(const PointCloud& cloud) {
  if (cloud.empty()) throw Error(ErrorCategory::EmptyCloud, "largest diagonal of an empty cloud");
  const Bounds b = bounding_box(cloud);
  return (b.max - b.min).norm();
}

namespace {

void require_points(const NeighborIndex& index, std::size_t needed, const char* what) {
  if (index.size() < needed) {
    throw Error(ErrorCategory::CloudTooSmall, std::string(what) + " needs at least " +
                                                  std::to_string(needed) + " points, cloud has " +
                                                  std::to_string(index.size()));
  }
}

// (1/N) sum_i (1/k) sum_j d_ij^2 over self-excluded neighborhoods.
double mean_squared_neighbor_distance(const NeighborIndex& index, std::size_t k) {
  double sum = 0.0;
  for (std::size_t i = 0; i < index.size(); ++i) {
    const auto hood = index.k_neighborhood(static_cast<PointIndex>(i), k);
    double local = 0.0;
    for (double d : hood.distances) local += d * d;
    sum += local / static_cast<double>(k);
  }
  return sum / static_cast<double>(index.size());
}

}  // namespace

double mnn(const NeighborIndex& index) {
  require_points(index, 2, "MNN");
  double worst = 0.0;
  for (std::size_t i = 0; i < index.size(); ++i) {
    worst = std::max(worst, index.nearest_to_member(static_cast<PointIndex>(i)).distance);
  }
  return worst;
}

double mnn(const PointCloud& cloud) { return mnn(NeighborIndex(cloud)); }

double ann(const NeighborIndex& index) {
  require_points(index, 2, "ANN");
  return std::sqrt(mean_squared_neighbor_distance(index, 1));
}

double ann(const PointCloud& cloud) { return ann(NeighborIndex(cloud)); }

double ann_k(const NeighborIndex& index, std::size_t k) {
  if (k == 0) throw Error(ErrorCategory::InvalidArgument, "ANNk needs k >= 1");
  require_points(index, k + 1, "ANNk");
  return std::sqrt(mean_squared_neighbor_distance(index, k));
}

double ann_k(const PointCloud& cloud, std::size_t k) { return ann_k(NeighborIndex(cloud), k); }

Vec3 planar_distance_vector(const Vec3& center, const Vec3& unit_normal, const Vec3& neighbor) noexcept {
  const Vec3 d = neighbor - center;
  return d - d.dot(unit_normal) * unit_normal;
}

double planar_distance(const Vec3& center, const Vec3& unit_normal, const Vec3& neighbor) {
  if (std::abs(unit_normal.norm() - 1.0) > kUnitNormalTolerance) {
    throw Error(ErrorCategory::InvalidArgument, "planar distance needs a unit normal");
  }
  return planar_distance_vector(center, unit_normal, neighbor).norm();
}

std::vector<double> local_apd_k(const NeighborIndex& index, std::span<const Vec3> normals, std::size_t k) {
  if (k == 0) throw Error(ErrorCategory::InvalidArgument, "APDk needs k >= 1");
  require_points(index, k + 1, "APDk");
  if (normals.size() != index.size()) {
    throw Error(ErrorCategory::MissingNormals, "APDk needs one normal per point");
  }
  std::vector<double> local(index.size());
  for (std::size_t i = 0; i < index.size(); ++i) {
    const Vec3& n = normals[i];
    if (std::abs(n.norm() - 1.0) > kUnitNormalTolerance) {
      throw Error(ErrorCategory::InvalidArgument, "normal " + std::to_string(i) + " is not unit length");
    }
    const auto hood = index.k_neighborhood(static_cast<PointIndex>(i), k);
    const Vec3& center = index.point(static_cast<PointIndex>(i));
    double sum = 0.0;
    for (PointIndex j : hood.neighbor_indices) {
      sum += planar_distance_vector(center, n, index.point(j)).squaredNorm();
    }
    local[i] = sum / static_cast<double>(k);
  }
  return local;
}

double apd_k(const NeighborIndex& index, std::span<const Vec3> normals, std::size_t k, ApdMode mode) {
  const std::vector<double> local = local_apd_k(index, normals, k);
  double sum = 0.0;
  for (double v : local) sum += v;
  const double mean = sum / static_cast<double>(local.size());
  return mode == ApdMode::Rms ? std::sqrt(mean) : mean;
}

double apd_k(const PointCloud& cloud, std::size_t k, ApdMode mode) {
  const PreparedCloud prepared(cloud);
  return apd_k(prepared.index(), prepared.normals(), k, mode);
}

double resolution(const PreparedCloud& cloud, const EstimatorSpec& estimator, ApdMode apd_mode) {
  switch (estimator.kind) {
    case Estimator::Mnn: return mnn(cloud.index());
    case Estimator::Ann: return ann(cloud.index());
    case Estimator::AnnK: return ann_k(cloud.index(), estimator.k);
    case Estimator::ApdK: return apd_k(cloud.index(), cloud.normals(), estimator.k, apd_mode);
  }
  throw Error(ErrorCategory::InvalidArgument, "unknown estimator");
}

double resolution(const PointCloud& cloud, const EstimatorSpec& estimator, std::size_t normal_k,
                  ApdMode apd_mode) {
  return resolution(PreparedCloud(cloud, normal_k), estimator, apd_mode);
}

double density_coefficient(int bit_depth, double r) {
  if (!(r > 0.0)) throw Error(ErrorCategory::ZeroPeak, "density coefficient needs a positive resolution");
  return precision_peak(bit_depth) / r;
}

// ---------------------------------------------------------------------------
// PSNR
// ---------------------------------------------------------------------------

double psnr_db(double numerator, double mse) {
  if (!(mse > 0.0)) throw Error(ErrorCategory::InvalidArgument, "PSNR needs a positive MSE");
  if (!(numerator > 0.0)) throw Error(ErrorCategory::ZeroPeak, "PSNR peak is zero");
  return 10.0 * std::log10(numerator / mse);
}

double ra_psnr_db_density_form(int bit_depth, double r, double mse) {
  const double pc = precision_peak(bit_depth);
  const double mu = density_coefficient(bit_depth, r);
  return psnr_db(3.0 * pc * pc / mu, mse);
}

double ra_psnr_db_resolution_form(int bit_depth, double r, double mse) {
  if (!(r > 0.0)) throw Error(ErrorCategory::ZeroPeak, "RA-PSNR needs a positive resolution");
  return psnr_db(3.0 * r * precision_peak(bit_depth), mse);
}

PeakValue compute_peak(const PreparedCloud& reference, const PeakSpec& peak, const MetricOptions& options) {
  validate(peak);
  if (reference.cloud().empty()) throw Error(ErrorCategory::EmptyCloud, "reference cloud is empty");

  PeakValue out;
  if (peak.needs_bit_depth()) {
    out.bit_depth = options.bit_depth ? options.bit_depth : reference.cloud().bit_depth;
    if (!out.bit_depth) {
      throw Error(ErrorCategory::MissingBitDepth, "peak " + to_string(peak) + " needs a coordinate bit depth");
    }
  }

  switch (peak.kind) {
    case PeakKind::Precision: {
      const double pc = precision_peak(*out.bit_depth);
      out.value = std::sqrt(3.0) * pc;
      out.numerator = 3.0 * pc * pc;
      break;
    }
    case PeakKind::LargestDiagonal: {
      // Both clouds share the reference's normalization, which cancels to LD^2 / MSE.
      out.value = largest_diagonal(reference.cloud());
      out.numerator = out.value * out.value;
      break;
    }
    case PeakKind::Resolution: {
      out.value = resolution(reference, peak.estimator, options.apd_mode);
      if (peak.density_adaptive) {
        out.numerator = 3.0 * out.value * precision_peak(*out.bit_depth);
      } else {
        out.numerator = out.value * out.value;
      }
      break;
    }
  }
  if (!(out.value > 0.0) || !(out.numerator > 0.0)) {
    throw Error(ErrorCategory::ZeroPeak, "peak " + to_string(peak) + " evaluates to zero on the reference cloud");
  }
  return out;
}

std::optional<double> pool(std::optional<double> ab, std::optional<double> ba, Pooling pooling) noexcept {
  if (pooling == Pooling::Max) {
    if (!ab || !ba) return std::nullopt;
    return std::max(*ab, *ba);
  }
  if (!ab) return ba;
  if (!ba) return ab;
  return std::min(*ab, *ba);
}

MetricResult assemble_result(double mse_ab, double mse_ba, const PeakValue& peak_value, ErrorKind kind,
                             const PeakSpec& peak, const MetricOptions& options) {
  MetricResult r;
  r.mse_ab = mse_ab;
  r.mse_ba = mse_ba;
  r.peak_value = peak_value.value;
  r.numerator = peak_value.numerator;
  r.error_kind = kind;
  r.peak = peak;
  r.pooling = options.pooling;
  r.apd_mode = options.apd_mode;
  r.normal_k = options.normal_k;
  r.bit_depth = peak_value.bit_depth;
  if (mse_ab > 0.0) r.psnr_ab = psnr_db(peak_value.numerator, mse_ab);
  if (mse_ba > 0.0) r.psnr_ba = psnr_db(peak_value.numerator, mse_ba);
  r.psnr_pooled = pool(r.psnr_ab, r.psnr_ba, options.pooling);
  return r;
}

MetricResult psnr(const PreparedCloud& reference, const PreparedCloud& degraded, ErrorKind kind,
                  const PeakSpec& peak, const MetricOptions& options) {
  if (reference.cloud().empty() || degraded.cloud().empty()) {
    throw Error(ErrorCategory::EmptyCloud, "PSNR needs non-empty clouds");
  }
  const PeakValue peak_value = compute_peak(reference, peak, options);
  const double mse_ab = directional_mse(reference, degraded, kind);
  const double mse_ba = directional_mse(degraded, reference, kind);
  MetricResult r = assemble_result(mse_ab, mse_ba, peak_value, kind, peak, options);
  const bool ref_normals = kind == ErrorKind::Po2Pl ||
                           (peak.kind == PeakKind::Resolution && peak.estimator.kind == Estimator::ApdK);
  if (ref_normals) r.reference_normals = reference.normal_source();
  if (kind == ErrorKind::Po2Pl) r.degraded_normals = degraded.normal_source();
  return r;
}

MetricResult psnr(const PointCloud& reference, const PointCloud& degraded, ErrorKind kind,
                  const PeakSpec& peak, const MetricOptions& options) {
  validate(peak);
  if (reference.empty() || degraded.empty()) throw Error(ErrorCategory::EmptyCloud, "PSNR needs non-empty clouds");
  return psnr(PreparedCloud(reference, options.normal_k), PreparedCloud(degraded, options.normal_k), kind, peak,
              options);
}

MetricResult ra_psnr(const PointCloud& reference, const PointCloud& degraded, ErrorKind kind,
                     const EstimatorSpec& estimator, const MetricOptions& options) {
  if (estimator.kind == Estimator::Mnn) {
    throw Error(ErrorCategory::InvalidArgument, "RA-PSNR takes ANN, ANNk or APDk");
  }
  return psnr(reference, degraded, kind, PeakSpec::resolution_adaptive(estimator), options);
}

}  // namespace pcqa
