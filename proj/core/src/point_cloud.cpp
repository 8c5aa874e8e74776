// SPDX-FileCopyrightText: 2026 The pcqa Authors
// SPDX-License-Identifier: Apache-2.0

#include "pcqa/point_cloud.hpp"

#include "pcqa/error.hpp"

#include <cmath>
#include <string>

namespace pcqa {

std::string_view to_string(ErrorCategory category) noexcept {
  switch (category) {
    case ErrorCategory::InvalidArgument: return "invalid-argument";
    case ErrorCategory::EmptyCloud: return "empty-cloud";
    case ErrorCategory::CloudTooSmall: return "cloud-too-small";
    case ErrorCategory::MissingNormals: return "missing-normals";
    case ErrorCategory::MissingBitDepth: return "missing-bit-depth";
    case ErrorCategory::ZeroPeak: return "zero-peak";
    case ErrorCategory::Parse: return "parse-error";
    case ErrorCategory::Io: return "io-error";
    case ErrorCategory::RankDeficient: return "rank-deficient";
    case ErrorCategory::ZeroVariance: return "zero-variance";
  }
  return "unknown";
}

double precision_peak(int bit_depth) {
  if (bit_depth < 1 || bit_depth > 52) {
    throw Error(ErrorCategory::InvalidArgument,
                "bit depth must be in [1, 52], got " + std::to_string(bit_depth));
  }
  return std::ldexp(1.0, bit_depth) - 1.0;
}

void validate(const PointCloud& cloud) {
  if (cloud.normals) {
    if (cloud.normals->size() != cloud.points.size()) {
      throw Error(ErrorCategory::InvalidArgument,
                  "normal count " + std::to_string(cloud.normals->size()) +
                      " does not match point count " + std::to_string(cloud.points.size()));
    }
    for (std::size_t i = 0; i < cloud.normals->size(); ++i) {
      if (std::abs((*cloud.normals)[i].norm() - 1.0) > kUnitNormalTolerance) {
        throw Error(ErrorCategory::InvalidArgument,
                    "normal " + std::to_string(i) + " is not unit length");
      }
    }
  }
  if (cloud.bit_depth) {
    const double peak = precision_peak(*cloud.bit_depth);
    for (std::size_t i = 0; i < cloud.points.size(); ++i) {
      const Vec3& p = cloud.points[i];
      if (p.minCoeff() < 0.0 || p.maxCoeff() > peak) {
        throw Error(ErrorCategory::InvalidArgument,
                    "point " + std::to_string(i) + " lies outside the " +
                        std::to_string(*cloud.bit_depth) + "-bit coordinate range");
      }
    }
  }
}

int infer_bit_depth(const PointCloud& cloud) {
  if (cloud.empty()) throw Error(ErrorCategory::EmptyCloud, "cannot infer bit depth of an empty cloud");
  double max_coord = 0.0;
  for (const Vec3& p : cloud.points) {
    if (p.minCoeff() < 0.0) {
      throw Error(ErrorCategory::MissingBitDepth,
                  "cannot infer bit depth: cloud has negative coordinates");
    }
    max_coord = std::max(max_coord, p.maxCoeff());
  }
  for (int b = 1; b <= 52; ++b) {
    if (max_coord <= std::ldexp(1.0, b) - 1.0) return b;
  }
  throw Error(ErrorCategory::MissingBitDepth, "cannot infer bit depth: coordinates exceed 2^52 - 1");
}

Bounds bounding_box(const PointCloud& cloud) {
  Bounds b{cloud.points.front(), cloud.points.front()};
  for (const Vec3& p : cloud.points) {
    b.min = b.min.cwiseMin(p);
    b.max = b.max.cwiseMax(p);
  }
  return b;
}

}  // namespace pcqa
