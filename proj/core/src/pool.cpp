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

#include "subprop/pool.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "subprop/errors.hpp"

namespace subprop {
namespace {

[[noreturn]] void segment_error(SegmentId id, const std::string& field,
                                const std::string& what) {
  fail(ErrorKind::kValidation,
       "segment " + std::to_string(id) + ": " + field + " " + what);
}

}  // namespace

SegmentPool SegmentPool::create(Grid grid, std::int32_t num_layers,
                                std::int32_t feature_dim,
                                std::vector<Segment> segments) {
  if (grid.width <= 0 || grid.height <= 0) {
    fail(ErrorKind::kValidation, "pool grid dimensions must be positive");
  }
  if (num_layers < 1) fail(ErrorKind::kValidation, "num_layers must be >= 1");
  if (feature_dim < 1) fail(ErrorKind::kValidation, "feature_dim must be >= 1");
  if (segments.empty()) fail(ErrorKind::kValidation, "pool has no segments");

  std::sort(segments.begin(), segments.end(),
            [](const Segment& a, const Segment& b) { return a.id < b.id; });

  SegmentPool pool;
  pool.grid_ = grid;
  pool.num_layers_ = num_layers;
  pool.feature_dim_ = feature_dim;
  pool.layer_members_.resize(static_cast<std::size_t>(num_layers));

  for (std::size_t k = 0; k < segments.size(); ++k) {
    const Segment& s = segments[k];
    if (s.id < 0) segment_error(s.id, "id", "must be >= 0");
    if (k > 0 && segments[k - 1].id == s.id) segment_error(s.id, "id", "is duplicated");
    if (s.layer < 0 || s.layer >= num_layers) {
      segment_error(s.id, "layer", "must be in [0, " + std::to_string(num_layers) + ")");
    }
    if (s.feature.size() != static_cast<std::size_t>(feature_dim)) {
      segment_error(s.id, "feature", "has length " + std::to_string(s.feature.size()) +
                                         ", expected " + std::to_string(feature_dim));
    }
    for (double x : s.feature) {
      if (!std::isfinite(x)) segment_error(s.id, "feature", "contains a non-finite value");
    }
    if (!std::isfinite(s.reward)) segment_error(s.id, "reward", "must be finite");
    if (s.reward < 0.0) {
      segment_error(s.id, "reward", "must be >= 0 (got " + std::to_string(s.reward) + ")");
    }
    if (s.mask.grid() != grid) segment_error(s.id, "mask", "is not on the pool grid");
    if (s.mask.empty()) segment_error(s.id, "mask", "is empty");
    pool.layer_members_[static_cast<std::size_t>(s.layer)].push_back(k);
  }
  for (std::int32_t l = 0; l < num_layers; ++l) {
    if (pool.layer_members_[static_cast<std::size_t>(l)].empty()) {
      fail(ErrorKind::kValidation, "layer " + std::to_string(l) + " has no segments");
    }
  }
  pool.segments_ = std::move(segments);
  return pool;
}

std::optional<std::size_t> SegmentPool::index_of(SegmentId id) const {
  auto it = std::lower_bound(
      segments_.begin(), segments_.end(), id,
      [](const Segment& s, SegmentId value) { return s.id < value; });
  if (it == segments_.end() || it->id != id) return std::nullopt;
  return static_cast<std::size_t>(it - segments_.begin());
}

GroundTruth GroundTruth::create(Grid grid, std::vector<GroundTruthObject> objects) {
  if (grid.width <= 0 || grid.height <= 0) {
    fail(ErrorKind::kValidation, "ground-truth grid dimensions must be positive");
  }
  if (objects.empty()) fail(ErrorKind::kValidation, "ground truth has no objects");
  std::set<std::int64_t> seen;
  for (const auto& o : objects) {
    const std::string who = "object " + std::to_string(o.instance);
    if (!seen.insert(o.instance).second) {
      fail(ErrorKind::kValidation, who + ": instance id is duplicated");
    }
    if (o.mask.grid() != grid) fail(ErrorKind::kValidation, who + ": mask is not on the grid");
    if (o.mask.empty()) fail(ErrorKind::kValidation, who + ": mask is empty");
  }
  GroundTruth gt;
  gt.grid_ = grid;
  gt.objects_ = std::move(objects);
  return gt;
}

}  // namespace subprop
