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

#ifndef SUBPROP_TESTS_SUPPORT_INSTANCES_HPP_
#define SUBPROP_TESTS_SUPPORT_INSTANCES_HPP_

#include <cstdint>

#include "subprop/cluster.hpp"
#include "subprop/pool.hpp"
#include "subprop/rng.hpp"
#include "subprop/simgraph.hpp"
#include "subprop/synth.hpp"

namespace subprop::testing {

// Pool + graph + clusters, built with the library's default pipeline.
struct Instance {
  SegmentPool pool;
  SimilarityGraph graph;
  ClusterAssignment clusters;
};

// Random mask on `grid`: alternating gaps and runs of random length.
RegionMask random_mask(Rng& rng, Grid grid, double fill = 0.3);

// Random rectangle of side at most max_side inside `grid`.
RegionMask random_rectangle(Rng& rng, Grid grid, int max_side);

// n segments over `layers` layers (each layer non-empty), rectangular masks
// on a small grid, features scattered around a few centres, rewards in
// [0, 1] with occasional zeros.
SegmentPool random_pool(std::uint64_t seed, std::size_t n, int layers);

// Neighbour rank min(7, n - 1) so tiny pools stay legal.
Instance build_instance(SegmentPool pool);
Instance random_instance(std::uint64_t seed, std::size_t n, int layers);

// Seeded synthetic fixtures shared by regression and acceptance tests.
SynthConfig fixture_seed0();   // small noisy scene, seed 0
SynthConfig fixture_500();     // ~500 segments, seed 0
SynthConfig fixture_10k();     // >= 10,000 segments in 4 layers, seed 0

}  // namespace subprop::testing

#endif  // SUBPROP_TESTS_SUPPORT_INSTANCES_HPP_
