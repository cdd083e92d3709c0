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

#ifndef SUBPROP_MASK_HPP_
#define SUBPROP_MASK_HPP_

#include <cstdint>
#include <span>
#include <vector>

namespace subprop {

struct Grid {
  std::int32_t width = 0;
  std::int32_t height = 0;

  std::int64_t cells() const {
    return static_cast<std::int64_t>(width) * height;
  }
  bool operator==(const Grid&) const = default;
};

// A half-open range [start, start + length) of row-major cell indices.
struct Run {
  std::int64_t start = 0;
  std::int64_t length = 0;

  std::int64_t end() const { return start + length; }
  bool operator==(const Run&) const = default;
};

// Binary region on a grid, stored as sorted, non-overlapping runs.
//
// Adjacent runs (end of one == start of the next) are legal and preserved as
// given; masks produced by this library (from_cells, dilate) are always fully
// merged.
class RegionMask {
 public:
  RegionMask() = default;

  // Validates the run invariants; throws Error(kValidation) describing the
  // first offending run.
  static RegionMask from_runs(Grid grid, std::vector<Run> runs);

  // Builds a merged mask from arbitrary (unsorted, possibly repeated) cells.
  static RegionMask from_cells(Grid grid, std::vector<std::int64_t> cells);

  // Axis-aligned rectangle [x0, x0 + w) x [y0, y0 + h), clipped to the grid.
  static RegionMask rectangle(Grid grid, std::int32_t x0, std::int32_t y0,
                              std::int32_t w, std::int32_t h);

  const Grid& grid() const { return grid_; }
  std::span<const Run> runs() const { return runs_; }
  bool empty() const { return runs_.empty(); }
  std::int64_t area() const;

  // Expands the row-major runs into individual cell indices.
  std::vector<std::int64_t> cells() const;

  bool operator==(const RegionMask&) const = default;

 private:
  RegionMask(Grid grid, std::vector<Run> runs)
      : grid_(grid), runs_(std::move(runs)) {}

  Grid grid_;
  std::vector<Run> runs_;
};

std::int64_t mask_area(const RegionMask& m);

// |a ∩ b| via a merge scan over the two run lists. Throws Error(kValidation)
// on grid mismatch.
std::int64_t mask_intersection_area(const RegionMask& a, const RegionMask& b);

// True iff the masks share at least one cell; stops at the first overlap.
bool masks_intersect(const RegionMask& a, const RegionMask& b);

// Morphological dilation with a diamond of the given radius (4-connectivity
// applied `radius` times), clipped to the grid.
RegionMask dilate(const RegionMask& m, int radius);

}  // namespace subprop

#endif  // SUBPROP_MASK_HPP_
