// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <map>

#include <benchmark/benchmark.h>

#include "subprop/cluster.hpp"
#include "subprop/greedy.hpp"
#include "subprop/objective.hpp"
#include "subprop/simgraph.hpp"
#include "subprop/synth.hpp"

namespace subprop {
namespace {

// Synthetic pool whose size grows with the background tile count.
const SegmentPool& pool_for(int tiles) {
  static std::map<int, SegmentPool> cache;
  auto it = cache.find(tiles);
  if (it == cache.end()) {
    SynthConfig c;
    c.grid = {400, 400};
    c.num_objects = 8;
    c.parts_per_object = 3;
    c.background_tiles = tiles;
    c.reward_noise_std = 0.1;
    c.feature_noise_std = 0.05;
    it = cache.emplace(tiles, generate(c).pool).first;
  }
  return it->second;
}

void BM_BuildGraph(benchmark::State& state) {
  const SegmentPool& pool = pool_for(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(build_graph(pool, {}));
  state.counters["segments"] = static_cast<double>(pool.size());
}
BENCHMARK(BM_BuildGraph)->Arg(256)->Arg(1600)->Arg(7225)->Unit(benchmark::kMillisecond);

void BM_ClusterPool(benchmark::State& state) {
  const SegmentPool& pool = pool_for(static_cast<int>(state.range(0)));
  const SimilarityGraph graph = build_graph(pool, {});
  for (auto _ : state) benchmark::DoNotOptimize(cluster_pool(pool, graph, {}));
  state.counters["segments"] = static_cast<double>(pool.size());
}
BENCHMARK(BM_ClusterPool)->Arg(256)->Arg(1600)->Arg(7225)->Unit(benchmark::kMillisecond);

template <bool kLazy>
void BM_Greedy(benchmark::State& state) {
  const SegmentPool& pool = pool_for(static_cast<int>(state.range(0)));
  const SimilarityGraph graph = build_graph(pool, {});
  const ClusterAssignment clusters = cluster_pool(pool, graph, {});
  const Objective objective(pool, graph, clusters, {3.9, 2.0, 100});
  std::uint64_t evaluations = 0;
  for (auto _ : state) {
    const auto result = kLazy ? greedy_lazy(pool, objective) : greedy_naive(pool, objective);
    evaluations = result.evaluations;
    benchmark::DoNotOptimize(result);
  }
  state.counters["segments"] = static_cast<double>(pool.size());
  state.counters["evaluations"] = static_cast<double>(evaluations);
}
BENCHMARK(BM_Greedy<true>)->Name("BM_GreedyLazy")->Arg(256)->Arg(1600)->Arg(7225)
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Greedy<false>)->Name("BM_GreedyNaive")->Arg(256)->Arg(1600)
    ->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace subprop

BENCHMARK_MAIN();
