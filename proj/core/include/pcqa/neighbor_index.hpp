// SPDX-FileCopyrightText: 2026 The pcqa Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PCQA_NEIGHBOR_INDEX_HPP
#define PCQA_NEIGHBOR_INDEX_HPP

#include "pcqa/point_cloud.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace pcqa {

using PointIndex = std::uint32_t;

struct Neighbor {
  PointIndex index;
  double distance;
};

/// k nearest neighbors of a member point, the center itself excluded.
/// Distances are ascending.
struct Neighborhood {
  PointIndex center_index;
  std::vector<PointIndex> neighbor_indices;
  std::vector<double> distances;
};

/// Exact k-nearest-neighbor search over an immutable snapshot of a cloud.
///
/// Backed by a kd-tree. Results are ordered by (distance, index), so equal
/// distances resolve to the lowest point index, and agree with an exhaustive
/// scan. Copies share the same snapshot; concurrent queries are safe.
class NeighborIndex {
 public:
  /// Throws Error(EmptyCloud) on an empty point set.
  explicit NeighborIndex(std::span<const Vec3> points);
  explicit NeighborIndex(const PointCloud& cloud) : NeighborIndex(std::span<const Vec3>(cloud.points)) {}

  std::size_t size() const noexcept;
  const Vec3& point(PointIndex i) const;

  /// min(k, N) nearest points to q (min(k, N - 1) when `exclude` names an
  /// indexed point, which is then left out of the candidates).
  std::vector<Neighbor> query(const Vec3& q, std::size_t k,
                              std::optional<PointIndex> exclude = std::nullopt) const;

  /// Single nearest point to q. Throws Error(CloudTooSmall) when exclusion
  /// leaves no candidate.
  Neighbor nearest(const Vec3& q, std::optional<PointIndex> exclude = std::nullopt) const;

  /// Nearest other point to member i (self excluded, duplicates kept).
  Neighbor nearest_to_member(PointIndex i) const;

  /// k nearest other points to member i. Throws Error(CloudTooSmall) when
  /// the index holds fewer than k + 1 points.
  Neighborhood k_neighborhood(PointIndex i, std::size_t k) const;

 private:
  struct Tree;
  std::shared_ptr<const Tree> tree_;
};

}  // namespace pcqa

#endif  // PCQA_NEIGHBOR_INDEX_HPP
