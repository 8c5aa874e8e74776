// SPDX-FileCopyrightText: 2026 The pcqa Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PCQA_DEGRADATION_HPP
#define PCQA_DEGRADATION_HPP

#include "pcqa/point_cloud.hpp"

#include <cstdint>

namespace pcqa {

/// Adds i.i.d. N(0, sigma^2) noise to every coordinate. Deterministic for a
/// given seed; the draw for a given seed is the same for every sigma, so a
/// ladder built from one seed is nested. Normals and bit_depth are dropped.
PointCloud add_gaussian_noise(const PointCloud& cloud, double sigma, std::uint64_t seed);

/// Octree-style requantization: every coordinate c becomes
/// floor(c / 2^bits) * 2^bits, then points that collapse onto the same voxel
/// are merged (first occurrence kept, original order preserved). Requires
/// 1 <= bits_dropped < bit_depth, where bit_depth is the cloud's own or
/// inferred. Normals are dropped; bit_depth is kept.
PointCloud octree_quantize(const PointCloud& cloud, int bits_dropped);

}  // namespace pcqa

#endif  // PCQA_DEGRADATION_HPP
