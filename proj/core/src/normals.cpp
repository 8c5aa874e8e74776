// SPDX-FileCopyrightText: 2026 The pcqa Authors
// SPDX-License-Identifier: Apache-2.0

#include "pcqa/normals.hpp"

#include "pcqa/error.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <string>

namespace pcqa {

std::size_t NormalEstimate::degenerate_count() const {
  return static_cast<std::size_t>(std::count(degenerate.begin(), degenerate.end(), true));
}

NormalEstimate estimate_normals(const PointCloud& cloud, const NeighborIndex& index, std::size_t k) {
  if (k < 3) throw Error(ErrorCategory::InvalidArgument, "normal estimation needs k >= 3");
  if (cloud.size() < k + 1) {
    throw Error(ErrorCategory::CloudTooSmall, "normal estimation with k = " + std::to_string(k) +
                                                  " needs at least " + std::to_string(k + 1) +
                                                  " points, cloud has " + std::to_string(cloud.size()));
  }
  if (index.size() != cloud.size()) {
    throw Error(ErrorCategory::InvalidArgument, "neighbor index does not belong to this cloud");
  }

  NormalEstimate out;
  out.normals.resize(cloud.size());
  out.degenerate.assign(cloud.size(), false);

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const auto hood = index.k_neighborhood(static_cast<PointIndex>(i), k);
    const double count = static_cast<double>(k + 1);

    Vec3 mean = cloud.points[i];
    for (PointIndex j : hood.neighbor_indices) mean += cloud.points[j];
    mean /= count;

    Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
    auto accumulate = [&](const Vec3& p) {
      const Vec3 d = p - mean;
      cov.noalias() += d * d.transpose();
    };
    accumulate(cloud.points[i]);
    for (PointIndex j : hood.neighbor_indices) accumulate(cloud.points[j]);
    cov /= count;

    if (!(cov.trace() > 0.0)) {
      out.normals[i] = Vec3::UnitZ();
      out.degenerate[i] = true;
      continue;
    }
    // Eigenvalues come back in increasing order.
    solver.compute(cov);
    Vec3 n = solver.eigenvectors().col(0);
    out.normals[i] = n.normalized();
  }
  return out;
}

NormalEstimate estimate_normals(const PointCloud& cloud, std::size_t k) {
  return estimate_normals(cloud, NeighborIndex(cloud), k);
}

PointCloud with_estimated_normals(const PointCloud& cloud, std::size_t k) {
  PointCloud out = cloud;
  out.normals = estimate_normals(cloud, k).normals;
  return out;
}

}  // namespace pcqa
