// SPDX-FileCopyrightText: 2026 The pcqa Authors
// SPDX-License-Identifier: Apache-2.0

#include "pcqa/degradation.hpp"

#include "pcqa/error.hpp"

#include <array>
#include <cmath>
#include <random>
#include <set>
#include <string>

namespace pcqa {

PointCloud add_gaussian_noise(const PointCloud& cloud, double sigma, std::uint64_t seed) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw Error(ErrorCategory::InvalidArgument, "gaussian sigma must be positive and finite");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> unit(0.0, 1.0);
  PointCloud out;
  out.points.reserve(cloud.size());
  for (const Vec3& p : cloud.points) {
    const double dx = unit(rng);
    const double dy = unit(rng);
    const double dz = unit(rng);
    out.points.emplace_back(p.x() + sigma * dx, p.y() + sigma * dy, p.z() + sigma * dz);
  }
  return out;
}

PointCloud octree_quantize(const PointCloud& cloud, int bits_dropped) {
  if (cloud.empty()) throw Error(ErrorCategory::EmptyCloud, "cannot quantize an empty cloud");
  const int bit_depth = cloud.bit_depth ? *cloud.bit_depth : infer_bit_depth(cloud);
  if (bits_dropped < 1 || bits_dropped >= bit_depth) {
    throw Error(ErrorCategory::InvalidArgument,
                "bits dropped must be in [1, " + std::to_string(bit_depth - 1) + "], got " +
                    std::to_string(bits_dropped));
  }
  const double cell = std::ldexp(1.0, bits_dropped);

  PointCloud out;
  out.bit_depth = cloud.bit_depth;
  std::set<std::array<std::int64_t, 3>> occupied;
  for (const Vec3& p : cloud.points) {
    if (p.minCoeff() < 0.0) {
      throw Error(ErrorCategory::InvalidArgument, "octree quantization needs non-negative coordinates");
    }
    const std::array<std::int64_t, 3> voxel{static_cast<std::int64_t>(std::floor(p.x() / cell)),
                                            static_cast<std::int64_t>(std::floor(p.y() / cell)),
                                            static_cast<std::int64_t>(std::floor(p.z() / cell))};
    if (!occupied.insert(voxel).second) continue;
    out.points.emplace_back(static_cast<double>(voxel[0]) * cell, static_cast<double>(voxel[1]) * cell,
                            static_cast<double>(voxel[2]) * cell);
  }
  return out;
}

}  // namespace pcqa
