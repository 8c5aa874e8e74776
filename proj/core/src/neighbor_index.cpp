// SPDX-FileCopyrightText: 2026 The pcqa Authors
// SPDX-License-Identifier: Apache-2.0

#include "pcqa/neighbor_index.hpp"

#include "pcqa/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace pcqa {

namespace {

constexpr std::uint32_t kLeafSize = 12;
constexpr std::int32_t kNoChild = -1;

struct Candidate {
  double sq_distance;
  PointIndex index;
};

// Max-heap order on (distance, index): the heap top is the worst candidate.
bool worse_first(const Candidate& a, const Candidate& b) {
  if (a.sq_distance != b.sq_distance) return a.sq_distance < b.sq_distance;
  return a.index < b.index;
}

}  // namespace

struct NeighborIndex::Tree {
  struct Node {
    std::uint32_t begin = 0;
    std::uint32_t end = 0;
    int axis = -1;  // -1 for leaves
    double split = 0;
    std::int32_t left = kNoChild;
    std::int32_t right = kNoChild;
  };

  std::vector<Vec3> points;
  std::vector<PointIndex> order;
  std::vector<Node> nodes;

  explicit Tree(std::span<const Vec3> pts) : points(pts.begin(), pts.end()), order(pts.size()) {
    std::iota(order.begin(), order.end(), PointIndex{0});
    nodes.reserve(2 * pts.size() / kLeafSize + 1);
    build(0, static_cast<std::uint32_t>(order.size()));
  }

  std::int32_t build(std::uint32_t begin, std::uint32_t end) {
    const auto id = static_cast<std::int32_t>(nodes.size());
    nodes.push_back({begin, end});
    if (end - begin <= kLeafSize) return id;

    Vec3 lo = points[order[begin]];
    Vec3 hi = lo;
    for (std::uint32_t i = begin; i < end; ++i) {
      lo = lo.cwiseMin(points[order[i]]);
      hi = hi.cwiseMax(points[order[i]]);
    }
    int axis = 0;
    (hi - lo).maxCoeff(&axis);
    if (hi[axis] == lo[axis]) return id;  // all coincident

    const std::uint32_t mid = begin + (end - begin) / 2;
    std::nth_element(order.begin() + begin, order.begin() + mid, order.begin() + end,
                     [&](PointIndex a, PointIndex b) {
                       const double ca = points[a][axis];
                       const double cb = points[b][axis];
                       return ca < cb || (ca == cb && a < b);
                     });
    const double split = points[order[mid]][axis];
    const std::int32_t left = build(begin, mid);
    const std::int32_t right = build(mid, end);
    Node& node = nodes[static_cast<std::size_t>(id)];
    node.axis = axis;
    node.split = split;
    node.left = left;
    node.right = right;
    return id;
  }

  void search(std::int32_t node_id, const Vec3& q, std::size_t k, std::optional<PointIndex> exclude,
              std::vector<Candidate>& heap) const {
    const Node& node = nodes[static_cast<std::size_t>(node_id)];
    if (node.axis < 0) {
      for (std::uint32_t i = node.begin; i < node.end; ++i) {
        const PointIndex idx = order[i];
        if (exclude && *exclude == idx) continue;
        const Candidate c{(points[idx] - q).squaredNorm(), idx};
        if (heap.size() < k) {
          heap.push_back(c);
          std::push_heap(heap.begin(), heap.end(), worse_first);
        } else if (worse_first(c, heap.front())) {
          std::pop_heap(heap.begin(), heap.end(), worse_first);
          heap.back() = c;
          std::push_heap(heap.begin(), heap.end(), worse_first);
        }
      }
      return;
    }
    const double diff = q[node.axis] - node.split;
    const std::int32_t near = diff < 0 ? node.left : node.right;
    const std::int32_t far = diff < 0 ? node.right : node.left;
    search(near, q, k, exclude, heap);
    // Equal distances stay reachable so ties resolve to the lowest index.
    if (heap.size() < k || diff * diff <= heap.front().sq_distance) {
      search(far, q, k, exclude, heap);
    }
  }
};

NeighborIndex::NeighborIndex(std::span<const Vec3> points) {
  if (points.empty()) throw Error(ErrorCategory::EmptyCloud, "cannot index an empty cloud");
  if (points.size() > std::numeric_limits<PointIndex>::max()) {
    throw Error(ErrorCategory::InvalidArgument, "cloud too large to index");
  }
  tree_ = std::make_shared<const Tree>(points);
}

std::size_t NeighborIndex::size() const noexcept { return tree_->points.size(); }

const Vec3& NeighborIndex::point(PointIndex i) const { return tree_->points.at(i); }

std::vector<Neighbor> NeighborIndex::query(const Vec3& q, std::size_t k,
                                           std::optional<PointIndex> exclude) const {
  const bool excluding = exclude.has_value() && exclude.value() < size();
  const std::size_t available = size() - (excluding ? 1 : 0);
  k = std::min(k, available);
  std::vector<Neighbor> out;
  if (k == 0) return out;

  std::vector<Candidate> heap;
  heap.reserve(k + 1);
  tree_->search(0, q, k, excluding ? exclude : std::nullopt, heap);
  std::sort_heap(heap.begin(), heap.end(), worse_first);
  out.reserve(heap.size());
  for (const Candidate& c : heap) out.push_back({c.index, std::sqrt(c.sq_distance)});
  return out;
}

Neighbor NeighborIndex::nearest(const Vec3& q, std::optional<PointIndex> exclude) const {
  auto result = query(q, 1, exclude);
  if (result.empty()) throw Error(ErrorCategory::CloudTooSmall, "no candidate points after self-exclusion");
  return result.front();
}

Neighbor NeighborIndex::nearest_to_member(PointIndex i) const { return nearest(point(i), i); }

Neighborhood NeighborIndex::k_neighborhood(PointIndex i, std::size_t k) const {
  if (k == 0) throw Error(ErrorCategory::InvalidArgument, "neighborhood size k must be positive");
  if (size() < k + 1) {
    throw Error(ErrorCategory::CloudTooSmall, "neighborhood of " + std::to_string(k) +
                                                  " points needs at least " + std::to_string(k + 1) +
                                                  " points, cloud has " + std::to_string(size()));
  }
  Neighborhood hood{i, {}, {}};
  const auto found = query(point(i), k, i);
  hood.neighbor_indices.reserve(found.size());
  hood.distances.reserve(found.size());
  for (const Neighbor& n : found) {
    hood.neighbor_indices.push_back(n.index);
    hood.distances.push_back(n.distance);
  }
  return hood;
}

}  // namespace pcqa
