// SPDX-FileCopyrightText: 2026 The pcqa Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PCQA_POINT_CLOUD_HPP
#define PCQA_POINT_CLOUD_HPP

#include <Eigen/Core>

#include <optional>
#include <vector>

namespace pcqa {

using Vec3 = Eigen::Vector3d;

/// Ordered set of 3D points in source units.
///
/// `normals`, when present, holds one unit vector per point. `bit_depth`,
/// when present, is the coordinate precision b of voxelized content: every
/// coordinate lies in [0, 2^b - 1].
struct PointCloud {
  std::vector<Vec3> points;
  std::optional<std::vector<Vec3>> normals;
  std::optional<int> bit_depth;

  std::size_t size() const noexcept { return points.size(); }
  bool empty() const noexcept { return points.empty(); }
  bool has_normals() const noexcept { return normals.has_value(); }
};

/// Tolerance on |n| - 1 for a vector to count as a unit normal.
inline constexpr double kUnitNormalTolerance = 1e-9;

/// Throws pcqa::Error if the cloud violates its invariants (normal count or
/// norm, coordinates outside the declared bit-depth range). Emptiness is not
/// checked here; metric entry points reject empty clouds themselves.
void validate(const PointCloud& cloud);

/// Peak coordinate value 2^b - 1.
double precision_peak(int bit_depth);

/// Smallest b >= 1 with max coordinate <= 2^b - 1. Throws on a negative
/// coordinate or an empty cloud.
int infer_bit_depth(const PointCloud& cloud);

/// Axis-aligned bounds of the cloud. Undefined for an empty cloud.
struct Bounds {
  Vec3 min;
  Vec3 max;
};
Bounds bounding_box(const PointCloud& cloud);

}  // namespace pcqa

#endif  // PCQA_POINT_CLOUD_HPP
