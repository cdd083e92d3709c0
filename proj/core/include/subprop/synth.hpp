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

#ifndef SUBPROP_SYNTH_HPP_
#define SUBPROP_SYNTH_HPP_

#include <cstdint>

#include <nlohmann/json.hpp>

#include "subprop/pool.hpp"

namespace subprop {

// Synthetic multi-scale pools with known objects.
//
// Every object is an axis-aligned rectangle with a "home" layer
// (object index mod num_layers). Each layer is a full partition of the grid:
//
//   coarser than home   the object grown by a margin per level of distance;
//                       the margin roughly doubles the area at one level
//   home layer          the object rectangle itself (the only exact match)
//   finer than home     the object cut into strips, max(2, parts_per_object)
//                       at the first finer layer and one more per level
//   background          one segment in layer 0; in layer l > 0 the rest of
//                       the grid cut by a g x g tile lattice, with g growing
//                       linearly to round(sqrt(background_tiles)) at the
//                       finest layer
//
// Features are 6-vectors: normalized centroid (x, y), sqrt of normalized
// area, and an RGB colour (per-object, background, or their area-weighted
// mix for margin segments), each perturbed by N(0, feature_noise_std).
// Rewards are clamp(max IoU with any object + N(0, reward_noise_std), 0, 1).
//
// All randomness comes from Rng(seed), so identical configs give identical
// output on every platform.
struct SynthConfig {
  std::uint64_t seed = 0;
  Grid grid{128, 128};
  int num_objects = 4;
  int num_layers = 4;
  int parts_per_object = 2;
  int background_tiles = 16;
  double reward_noise_std = 0.0;
  double feature_noise_std = 0.0;
};

struct SynthOutput {
  SegmentPool pool;
  GroundTruth ground_truth;
};

// Maximum placement attempts per object before giving up.
inline constexpr int kPlacementAttempts = 1000;

inline constexpr int kSynthFeatureDim = 6;

// Throws Error(kUsage) for invalid parameters and Error(kValidation) when the
// grid is too small or the objects cannot be placed without overlap.
SynthOutput generate(const SynthConfig& config);

nlohmann::json synth_config_to_json(const SynthConfig& config);

}  // namespace subprop

#endif  // SUBPROP_SYNTH_HPP_
