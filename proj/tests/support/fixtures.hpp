// SPDX-FileCopyrightText: 2026 The pcqa Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PCQA_TESTS_FIXTURES_HPP
#define PCQA_TESTS_FIXTURES_HPP

#include "pcqa/point_cloud.hpp"

#include <Eigen/Geometry>

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <set>
#include <tuple>
#include <vector>

namespace pcqa::fixtures {

inline PointCloud random_cloud(std::size_t n, std::uint64_t seed, double extent = 10.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, extent);
  PointCloud c;
  c.points.reserve(n);
  for (std::size_t i = 0; i < n; ++i) c.points.emplace_back(u(rng), u(rng), u(rng));
  return c;
}

inline Vec3 random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Vec3 v;
  do {
    v = Vec3(g(rng), g(rng), g(rng));
  } while (v.norm() < 1e-6);
  return v.normalized();
}

inline std::vector<Vec3> random_normals(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Vec3> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(random_unit(rng));
  return out;
}

/// nx * ny * nz lattice with the given spacing, origin at `origin`.
inline PointCloud grid(int nx, int ny, int nz, double spacing, Vec3 origin = Vec3::Zero()) {
  PointCloud c;
  for (int x = 0; x < nx; ++x)
    for (int y = 0; y < ny; ++y)
      for (int z = 0; z < nz; ++z) c.points.push_back(origin + spacing * Vec3(x, y, z));
  return c;
}

/// Planar lattice spanned by unit vectors u, v (spacing s) with normal u x v.
inline PointCloud planar_grid(int n, double s, const Vec3& u, const Vec3& v) {
  PointCloud c;
  const Vec3 normal = u.cross(v).normalized();
  c.normals.emplace();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      c.points.push_back(s * (i * u + j * v));
      c.normals->push_back(normal);
    }
  return c;
}

/// Fibonacci-lattice sample of a sphere with outward normals.
inline PointCloud fibonacci_sphere(std::size_t n, double radius = 1.0, Vec3 center = Vec3::Zero()) {
  PointCloud c;
  c.normals.emplace();
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (std::size_t i = 0; i < n; ++i) {
    const double y = 1.0 - 2.0 * (static_cast<double>(i) + 0.5) / static_cast<double>(n);
    const double r = std::sqrt(1.0 - y * y);
    const double theta = golden * static_cast<double>(i);
    const Vec3 dir(r * std::cos(theta), y, r * std::sin(theta));
    c.points.push_back(center + radius * dir);
    c.normals->push_back(dir);
  }
  return c;
}

/// Voxelized surfaces on an integer grid (duplicates removed), bit_depth set.
enum class Shape { Sphere, Torus, Wave };

inline PointCloud voxelized_shape(Shape shape, int bit_depth, std::size_t samples) {
  const double size = std::ldexp(1.0, bit_depth) - 1.0;
  const Vec3 c(size / 2, size / 2, size / 2);
  std::set<std::tuple<long, long, long>> seen;
  PointCloud out;
  out.bit_depth = bit_depth;
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (std::size_t i = 0; i < samples; ++i) {
    const double t = (static_cast<double>(i) + 0.5) / static_cast<double>(samples);
    Vec3 p;
    switch (shape) {
      case Shape::Sphere: {
        const double y = 1.0 - 2.0 * t;
        const double r = std::sqrt(1.0 - y * y);
        const double th = golden * static_cast<double>(i);
        p = c + 0.4 * size * Vec3(r * std::cos(th), y, r * std::sin(th));
        break;
      }
      case Shape::Torus: {
        const double u = 2 * std::numbers::pi * t;
        const double v = golden * static_cast<double>(i);
        const double R = 0.3 * size;
        const double r = 0.12 * size;
        p = c + Vec3((R + r * std::cos(v)) * std::cos(u), (R + r * std::cos(v)) * std::sin(u), r * std::sin(v));
        break;
      }
      case Shape::Wave: {
        const double u = t;
        const double v = std::fmod(golden * static_cast<double>(i) / (2 * std::numbers::pi), 1.0);
        const double x = 0.1 * size + 0.8 * size * u;
        const double y = 0.1 * size + 0.8 * size * v;
        const double z = c.z() + 0.1 * size * std::sin(2 * std::numbers::pi * 2 * u) * std::cos(2 * std::numbers::pi * v);
        p = Vec3(x, y, z);
        break;
      }
    }
    const Vec3 q = p.array().round().matrix();
    if (seen.emplace(static_cast<long>(q.x()), static_cast<long>(q.y()), static_cast<long>(q.z())).second) {
      out.points.push_back(q);
    }
  }
  return out;
}

}  // namespace pcqa::fixtures

#endif  // PCQA_TESTS_FIXTURES_HPP
