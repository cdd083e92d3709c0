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

#include "subprop/mask.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "subprop/errors.hpp"

namespace subprop {
namespace {

void check_same_grid(const RegionMask& a, const RegionMask& b) {
  if (a.grid() != b.grid()) {
    fail(ErrorKind::kValidation,
         "mask grid mismatch: " + std::to_string(a.grid().width) + "x" +
             std::to_string(a.grid().height) + " vs " +
             std::to_string(b.grid().width) + "x" +
             std::to_string(b.grid().height));
  }
}

// Appends [start, end) to a sorted run list, merging with the tail when the
// ranges touch or overlap. Input ranges must arrive sorted by start.
void append_merged(std::vector<Run>& runs, std::int64_t start,
                   std::int64_t end) {
  if (!runs.empty() && start <= runs.back().end()) {
    runs.back().length = std::max(runs.back().end(), end) - runs.back().start;
    return;
  }
  runs.push_back({start, end - start});
}

}  // namespace

RegionMask RegionMask::from_runs(Grid grid, std::vector<Run> runs) {
  if (grid.width <= 0 || grid.height <= 0) {
    fail(ErrorKind::kValidation, "grid dimensions must be positive");
  }
  const std::int64_t limit = grid.cells();
  for (std::size_t k = 0; k < runs.size(); ++k) {
    const Run& r = runs[k];
    const std::string where = "run " + std::to_string(k) + " (" +
                              std::to_string(r.start) + "," +
                              std::to_string(r.length) + ")";
    if (r.length <= 0) fail(ErrorKind::kValidation, where + ": length must be positive");
    if (r.start < 0 || r.end() > limit) {
      fail(ErrorKind::kValidation, where + ": outside grid of " +
                                       std::to_string(limit) + " cells");
    }
    if (k > 0 && runs[k - 1].end() > r.start) {
      fail(ErrorKind::kValidation, where + ": runs must be sorted and non-overlapping");
    }
  }
  return RegionMask(grid, std::move(runs));
}

RegionMask RegionMask::from_cells(Grid grid, std::vector<std::int64_t> cells) {
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  std::vector<Run> runs;
  for (std::int64_t c : cells) {
    if (c < 0 || c >= grid.cells()) {
      fail(ErrorKind::kValidation, "cell " + std::to_string(c) + " outside grid");
    }
    append_merged(runs, c, c + 1);
  }
  return RegionMask(grid, std::move(runs));
}

RegionMask RegionMask::rectangle(Grid grid, std::int32_t x0, std::int32_t y0,
                                 std::int32_t w, std::int32_t h) {
  const std::int32_t xa = std::max(0, x0);
  const std::int32_t ya = std::max(0, y0);
  const std::int32_t xb = std::min(grid.width, x0 + w);
  const std::int32_t yb = std::min(grid.height, y0 + h);
  std::vector<Run> runs;
  if (xa < xb) {
    for (std::int32_t y = ya; y < yb; ++y) {
      const std::int64_t row = static_cast<std::int64_t>(y) * grid.width;
      append_merged(runs, row + xa, row + xb);
    }
  }
  return RegionMask(grid, std::move(runs));
}

std::int64_t RegionMask::area() const {
  std::int64_t total = 0;
  for (const Run& r : runs_) total += r.length;
  return total;
}

std::vector<std::int64_t> RegionMask::cells() const {
  std::vector<std::int64_t> out;
  out.reserve(static_cast<std::size_t>(area()));
  for (const Run& r : runs_) {
    for (std::int64_t c = r.start; c < r.end(); ++c) out.push_back(c);
  }
  return out;
}

std::int64_t mask_area(const RegionMask& m) { return m.area(); }

std::int64_t mask_intersection_area(const RegionMask& a, const RegionMask& b) {
  check_same_grid(a, b);
  const auto ra = a.runs();
  const auto rb = b.runs();
  std::size_t i = 0;
  std::size_t j = 0;
  std::int64_t total = 0;
  while (i < ra.size() && j < rb.size()) {
    const std::int64_t lo = std::max(ra[i].start, rb[j].start);
    const std::int64_t hi = std::min(ra[i].end(), rb[j].end());
    if (lo < hi) total += hi - lo;
    if (ra[i].end() < rb[j].end()) {
      ++i;
    } else {
      ++j;
    }
  }
  return total;
}

bool masks_intersect(const RegionMask& a, const RegionMask& b) {
  check_same_grid(a, b);
  const auto ra = a.runs();
  const auto rb = b.runs();
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < ra.size() && j < rb.size()) {
    if (std::max(ra[i].start, rb[j].start) < std::min(ra[i].end(), rb[j].end())) {
      return true;
    }
    if (ra[i].end() < rb[j].end()) {
      ++i;
    } else {
      ++j;
    }
  }
  return false;
}

RegionMask dilate(const RegionMask& m, int radius) {
  if (radius < 0) fail(ErrorKind::kUsage, "dilation radius must be >= 0");
  const Grid g = m.grid();
  if (radius == 0) {
    std::vector<Run> runs;
    for (const Run& r : m.runs()) append_merged(runs, r.start, r.end());
    return RegionMask::from_runs(g, std::move(runs));
  }

  // Split runs into per-row spans, then stamp the diamond row by row.
  struct Span {
    std::int32_t y;
    std::int32_t x0;  // inclusive
    std::int32_t x1;  // inclusive
  };
  std::vector<Span> spans;
  for (const Run& r : m.runs()) {
    std::int64_t c = r.start;
    while (c < r.end()) {
      const auto y = static_cast<std::int32_t>(c / g.width);
      const std::int64_t row_end = static_cast<std::int64_t>(y + 1) * g.width;
      const std::int64_t stop = std::min(r.end(), row_end);
      spans.push_back({y, static_cast<std::int32_t>(c - static_cast<std::int64_t>(y) * g.width),
                       static_cast<std::int32_t>(stop - 1 - static_cast<std::int64_t>(y) * g.width)});
      c = stop;
    }
  }

  std::vector<std::pair<std::int64_t, std::int64_t>> ranges;
  ranges.reserve(spans.size() * (2 * static_cast<std::size_t>(radius) + 1));
  for (const Span& s : spans) {
    for (int dy = -radius; dy <= radius; ++dy) {
      const std::int32_t y = s.y + dy;
      if (y < 0 || y >= g.height) continue;
      const int reach = radius - std::abs(dy);
      const std::int32_t x0 = std::max(0, s.x0 - reach);
      const std::int32_t x1 = std::min(g.width - 1, s.x1 + reach);
      const std::int64_t row = static_cast<std::int64_t>(y) * g.width;
      ranges.emplace_back(row + x0, row + x1 + 1);
    }
  }
  std::sort(ranges.begin(), ranges.end());
  std::vector<Run> runs;
  for (const auto& [lo, hi] : ranges) append_merged(runs, lo, hi);
  return RegionMask::from_runs(g, std::move(runs));
}

}  // namespace subprop
