// SPDX-FileCopyrightText: 2026 The pcqa Authors
// SPDX-License-Identifier: Apache-2.0

#include "pcqa/degradation.hpp"
#include "pcqa/metrics.hpp"
#include "pcqa/neighbor_index.hpp"
#include "pcqa/normals.hpp"
#include "support/fixtures.hpp"

#include <benchmark/benchmark.h>

#include <map>

namespace {

using namespace pcqa;

const PointCloud& shape(int samples) {
  static std::map<int, PointCloud> cache;
  auto it = cache.find(samples);
  if (it == cache.end()) {
    it = cache.emplace(samples, fixtures::voxelized_shape(fixtures::Shape::Sphere, 10, samples)).first;
  }
  return it->second;
}

void BM_IndexBuild(benchmark::State& state) {
  const PointCloud& c = shape(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(NeighborIndex(c));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(c.size()));
}
BENCHMARK(BM_IndexBuild)->Arg(10000)->Arg(100000);

void BM_NearestQuery(benchmark::State& state) {
  const PointCloud& c = shape(static_cast<int>(state.range(0)));
  const NeighborIndex idx(c);
  const PointCloud probes = add_gaussian_noise(c, 1.0, 1);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(idx.nearest(probes.points[i]));
    i = (i + 1) % probes.size();
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_NearestQuery)->Arg(10000)->Arg(100000);

void BM_KNeighborhood(benchmark::State& state) {
  const PointCloud& c = shape(50000);
  const NeighborIndex idx(c);
  const auto k = static_cast<std::size_t>(state.range(0));
  PointIndex i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(idx.k_neighborhood(i, k));
    i = static_cast<PointIndex>((i + 1) % c.size());
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_KNeighborhood)->Arg(1)->Arg(10)->Arg(30);

void BM_EstimateNormals(benchmark::State& state) {
  const PointCloud& c = shape(static_cast<int>(state.range(0)));
  const NeighborIndex idx(c);
  for (auto _ : state) benchmark::DoNotOptimize(estimate_normals(c, idx, kDefaultNormalK));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(c.size()));
}
BENCHMARK(BM_EstimateNormals)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_Resolution(benchmark::State& state) {
  const PreparedCloud c(shape(20000));
  c.normals();
  const EstimatorSpec specs[] = {EstimatorSpec::mnn(), EstimatorSpec::ann(), EstimatorSpec::ann_k(),
                                 EstimatorSpec::apd_k()};
  const EstimatorSpec spec = specs[state.range(0)];
  for (auto _ : state) benchmark::DoNotOptimize(resolution(c, spec));
  state.SetLabel(std::string(to_string(spec.kind)));
}
BENCHMARK(BM_Resolution)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

void BM_DirectionalMse(benchmark::State& state) {
  const PreparedCloud ref(shape(50000));
  const PreparedCloud deg(add_gaussian_noise(ref.cloud(), 1.0, 2));
  const auto kind = state.range(0) == 0 ? ErrorKind::Po2Po : ErrorKind::Po2Pl;
  deg.normals();
  for (auto _ : state) benchmark::DoNotOptimize(directional_mse(ref, deg, kind));
  state.SetLabel(std::string(to_string(kind)));
}
BENCHMARK(BM_DirectionalMse)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
