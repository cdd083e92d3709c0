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

#ifndef SUBPROP_POOL_HPP_
#define SUBPROP_POOL_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "subprop/mask.hpp"

namespace subprop {

using SegmentId = std::int64_t;

struct Segment {
  SegmentId id = 0;
  std::int32_t layer = 0;
  std::vector<double> feature;
  double reward = 0.0;  // object-likeness score, >= 0
  RegionMask mask;

  bool operator==(const Segment&) const = default;
};

// All candidate segments of one image, across every layer of its
// segmentation hierarchy. Immutable once created.
//
// Segments are kept sorted by id; the position in that order is the segment's
// "index", which every other module uses for dense per-segment arrays.
class SegmentPool {
 public:
  SegmentPool() = default;

  // Validates and sorts; throws Error(kValidation) naming the offending
  // segment id and field.
  static SegmentPool create(Grid grid, std::int32_t num_layers,
                            std::int32_t feature_dim,
                            std::vector<Segment> segments);

  const Grid& grid() const { return grid_; }
  std::int32_t num_layers() const { return num_layers_; }
  std::int32_t feature_dim() const { return feature_dim_; }
  std::size_t size() const { return segments_.size(); }

  std::span<const Segment> segments() const { return segments_; }
  const Segment& segment(std::size_t index) const { return segments_[index]; }

  std::optional<std::size_t> index_of(SegmentId id) const;

  // Indices of the segments in `layer`, ascending.
  std::span<const std::size_t> layer_members(std::int32_t layer) const {
    return layer_members_[static_cast<std::size_t>(layer)];
  }

  bool operator==(const SegmentPool& other) const {
    return grid_ == other.grid_ && num_layers_ == other.num_layers_ &&
           feature_dim_ == other.feature_dim_ && segments_ == other.segments_;
  }

 private:
  Grid grid_;
  std::int32_t num_layers_ = 0;
  std::int32_t feature_dim_ = 0;
  std::vector<Segment> segments_;
  std::vector<std::vector<std::size_t>> layer_members_;
};

struct GroundTruthObject {
  std::int64_t instance = 0;
  std::string class_label;
  RegionMask mask;

  bool operator==(const GroundTruthObject&) const = default;
};

class GroundTruth {
 public:
  GroundTruth() = default;

  // Requires at least one object, unique instance ids and non-empty masks
  // on `grid`.
  static GroundTruth create(Grid grid, std::vector<GroundTruthObject> objects);

  const Grid& grid() const { return grid_; }
  std::span<const GroundTruthObject> objects() const { return objects_; }

  bool operator==(const GroundTruth&) const = default;

 private:
  Grid grid_;
  std::vector<GroundTruthObject> objects_;
};

}  // namespace subprop

#endif  // SUBPROP_POOL_HPP_
