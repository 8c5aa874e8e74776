// SPDX-FileCopyrightText: 2026 The pcqa Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PCQA_NORMALS_HPP
#define PCQA_NORMALS_HPP

#include "pcqa/neighbor_index.hpp"
#include "pcqa/point_cloud.hpp"

#include <vector>

namespace pcqa {

inline constexpr std::size_t kDefaultNormalK = 10;

struct NormalEstimate {
  std::vector<Vec3> normals;
  /// true where the neighborhood was fully coincident; those normals are (0,0,1).
  std::vector<bool> degenerate;

  std::size_t degenerate_count() const;
};

/// PCA normals: for each point, the eigenvector of the smallest eigenvalue of
/// the covariance of the point and its k nearest neighbors, centered on their
/// mean. Orientation is arbitrary. Requires k >= 3 and at least k + 1 points.
NormalEstimate estimate_normals(const PointCloud& cloud, const NeighborIndex& index,
                                std::size_t k = kDefaultNormalK);
NormalEstimate estimate_normals(const PointCloud& cloud, std::size_t k = kDefaultNormalK);

/// Copy of `cloud` with estimated normals attached (existing normals replaced).
PointCloud with_estimated_normals(const PointCloud& cloud, std::size_t k = kDefaultNormalK);

}  // namespace pcqa

#endif  // PCQA_NORMALS_HPP
