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

#include "subprop/synth.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "subprop/errors.hpp"
#include "subprop/eval.hpp"
#include "subprop/rng.hpp"

namespace subprop {

using nlohmann::json;

namespace {

using Color = std::array<double, 3>;

struct Rect {
  std::int32_t x = 0;
  std::int32_t y = 0;
  std::int32_t w = 0;
  std::int32_t h = 0;

  Rect grown(std::int32_t m) const { return {x - m, y - m, w + 2 * m, h + 2 * m}; }
  bool overlaps(const Rect& o) const {
    return x < o.x + o.w && o.x < x + w && y < o.y + o.h && o.y < y + h;
  }
  std::int64_t area() const { return static_cast<std::int64_t>(w) * h; }
};

struct Object {
  Rect rect;
  int home = 0;
  std::int32_t margin = 0;
  Color color{};
  std::string label;
};

enum class Origin { kMargin, kWhole, kPart, kBackground };

struct Region {
  Origin origin = Origin::kBackground;
  int object = -1;
};

// Smallest m >= 1 with (w + 2m)(h + 2m) >= 2wh.
std::int32_t doubling_margin(std::int32_t w, std::int32_t h) {
  std::int32_t m = 1;
  while (static_cast<std::int64_t>(w + 2 * m) * (h + 2 * m) < 2 * static_cast<std::int64_t>(w) * h) ++m;
  return m;
}

void paint(std::vector<std::int32_t>& labels, Grid g, const Rect& r, std::int32_t label) {
  for (std::int32_t y = r.y; y < r.y + r.h; ++y) {
    for (std::int32_t x = r.x; x < r.x + r.w; ++x) {
      labels[static_cast<std::size_t>(y) * static_cast<std::size_t>(g.width) + static_cast<std::size_t>(x)] = label;
    }
  }
}

void check_config(const SynthConfig& c) {
  if (c.grid.width <= 0 || c.grid.height <= 0) fail(ErrorKind::kUsage, "synth: grid must be positive");
  if (c.num_objects < 1) fail(ErrorKind::kUsage, "synth: num_objects must be >= 1");
  if (c.num_layers < 2) fail(ErrorKind::kUsage, "synth: num_layers must be >= 2");
  if (c.parts_per_object < 1) fail(ErrorKind::kUsage, "synth: parts_per_object must be >= 1");
  if (c.background_tiles < 1) fail(ErrorKind::kUsage, "synth: background_tiles must be >= 1");
  if (!(c.reward_noise_std >= 0.0) || !(c.feature_noise_std >= 0.0)) {
    fail(ErrorKind::kUsage, "synth: noise standard deviations must be >= 0");
  }
}

std::vector<Object> place_objects(const SynthConfig& c, Rng& rng) {
  const Grid g = c.grid;
  const int per_side = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(c.num_objects))));
  const std::int32_t cell = std::min(g.width, g.height) / per_side;
  // The doubling margin is about 0.21 of the side per level, so an object at
  // home layer L-1 spans roughly (1 + 0.42 (L-1)) sides; keep that within
  // most of a cell.
  const std::int32_t min_side = c.parts_per_object + c.num_layers;
  const double growth = 1.0 + 0.42 * (c.num_layers - 1);
  const std::int32_t hi = std::max(min_side, static_cast<std::int32_t>(0.8 * cell / growth));
  const std::int32_t lo = std::max(min_side, hi / 2);

  std::vector<Object> objects;
  std::vector<Rect> footprints;
  for (int o = 0; o < c.num_objects; ++o) {
    Object obj;
    obj.home = o % c.num_layers;
    for (double& ch : obj.color) ch = rng.uniform01();
    obj.label = "class_" + std::to_string(rng.index(3));
    obj.rect.w = static_cast<std::int32_t>(rng.integer(lo, hi));
    obj.rect.h = static_cast<std::int32_t>(rng.integer(lo, hi));
    obj.margin = doubling_margin(obj.rect.w, obj.rect.h);
    const std::int32_t reach = obj.home * obj.margin;
    const std::int32_t span_x = g.width - obj.rect.w - 2 * reach;
    const std::int32_t span_y = g.height - obj.rect.h - 2 * reach;
    if (span_x < 0 || span_y < 0) {
      fail(ErrorKind::kValidation, "synth: grid " + std::to_string(g.width) + "x" +
                                       std::to_string(g.height) + " is too small for object " +
                                       std::to_string(o));
    }
    bool placed = false;
    for (int attempt = 0; attempt < kPlacementAttempts && !placed; ++attempt) {
      obj.rect.x = reach + static_cast<std::int32_t>(rng.integer(0, span_x));
      obj.rect.y = reach + static_cast<std::int32_t>(rng.integer(0, span_y));
      const Rect footprint = obj.rect.grown(reach);
      placed = std::none_of(footprints.begin(), footprints.end(),
                            [&](const Rect& f) { return f.overlaps(footprint); });
      if (placed) footprints.push_back(footprint);
    }
    if (!placed) {
      fail(ErrorKind::kValidation, "synth: could not place object " + std::to_string(o) +
                                       " without overlap after " +
                                       std::to_string(kPlacementAttempts) + " attempts");
    }
    objects.push_back(std::move(obj));
  }
  return objects;
}

// Splits `r` into `n` strips along its longer side.
std::vector<Rect> strips(const Rect& r, int n) {
  std::vector<Rect> out;
  const bool horizontal = r.w >= r.h;
  const std::int32_t len = horizontal ? r.w : r.h;
  for (int p = 0; p < n; ++p) {
    const std::int32_t a = static_cast<std::int32_t>(static_cast<std::int64_t>(p) * len / n);
    const std::int32_t b = static_cast<std::int32_t>(static_cast<std::int64_t>(p + 1) * len / n);
    out.push_back(horizontal ? Rect{r.x + a, r.y, b - a, r.h} : Rect{r.x, r.y + a, r.w, b - a});
  }
  return out;
}

}  // namespace

SynthOutput generate(const SynthConfig& config) {
  check_config(config);
  const Grid g = config.grid;
  const int layers = config.num_layers;
  Rng rng(config.seed);

  Color background{};
  for (double& ch : background) ch = rng.uniform01();
  const std::vector<Object> objects = place_objects(config, rng);

  std::vector<GroundTruthObject> gt_objects;
  for (std::size_t o = 0; o < objects.size(); ++o) {
    const Rect& r = objects[o].rect;
    gt_objects.push_back({static_cast<std::int64_t>(o), objects[o].label,
                          RegionMask::rectangle(g, r.x, r.y, r.w, r.h)});
  }

  const auto cells = static_cast<std::size_t>(g.cells());
  const double cell_count = static_cast<double>(g.cells());
  const double finest_side = std::max(1.0, std::round(std::sqrt(static_cast<double>(config.background_tiles))));

  std::vector<Segment> segments;
  for (int l = 0; l < layers; ++l) {
    std::vector<std::int32_t> labels(cells, -1);
    std::vector<Region> regions;
    for (std::size_t o = 0; o < objects.size(); ++o) {
      const Object& obj = objects[o];
      const int o_id = static_cast<int>(o);
      if (l < obj.home) {
        paint(labels, g, obj.rect.grown((obj.home - l) * obj.margin), static_cast<std::int32_t>(regions.size()));
        regions.push_back({Origin::kMargin, o_id});
      } else if (l == obj.home) {
        paint(labels, g, obj.rect, static_cast<std::int32_t>(regions.size()));
        regions.push_back({Origin::kWhole, o_id});
      } else {
        const int n = std::max(2, config.parts_per_object) + (l - obj.home - 1);
        for (const Rect& piece : strips(obj.rect, n)) {
          paint(labels, g, piece, static_cast<std::int32_t>(regions.size()));
          regions.push_back({Origin::kPart, o_id});
        }
      }
    }

    // Background cells get provisional labels by tile, compacted below.
    const int side = l == 0 ? 1
                            : std::max(1, static_cast<int>(std::lround(finest_side * l / (layers - 1))));
    std::vector<std::int32_t> tile_label(static_cast<std::size_t>(side) * static_cast<std::size_t>(side), -1);
    for (std::int32_t y = 0; y < g.height; ++y) {
      for (std::int32_t x = 0; x < g.width; ++x) {
        const std::size_t c = static_cast<std::size_t>(y) * static_cast<std::size_t>(g.width) + static_cast<std::size_t>(x);
        if (labels[c] >= 0) continue;
        const auto tx = static_cast<std::size_t>(static_cast<std::int64_t>(x) * side / g.width);
        const auto ty = static_cast<std::size_t>(static_cast<std::int64_t>(y) * side / g.height);
        labels[c] = -2 - static_cast<std::int32_t>(ty * static_cast<std::size_t>(side) + tx);
      }
    }
    for (std::size_t c = 0; c < cells; ++c) {
      if (labels[c] <= -2) tile_label[static_cast<std::size_t>(-2 - labels[c])] = 0;
    }
    for (auto& t : tile_label) {
      if (t == 0) {
        t = static_cast<std::int32_t>(regions.size());
        regions.push_back({Origin::kBackground, -1});
      }
    }
    for (std::size_t c = 0; c < cells; ++c) {
      if (labels[c] <= -2) labels[c] = tile_label[static_cast<std::size_t>(-2 - labels[c])];
    }

    // Row-major scan yields each region's runs already sorted.
    std::vector<std::vector<std::int64_t>> region_cells(regions.size());
    for (std::size_t c = 0; c < cells; ++c) {
      region_cells[static_cast<std::size_t>(labels[c])].push_back(static_cast<std::int64_t>(c));
    }
    for (std::size_t r = 0; r < regions.size(); ++r) {
      Segment seg;
      seg.id = static_cast<SegmentId>(segments.size());
      seg.layer = l;
      double sx = 0.0;
      double sy = 0.0;
      for (std::int64_t c : region_cells[r]) {
        sx += static_cast<double>(c % g.width) + 0.5;
        sy += static_cast<double>(c / g.width) + 0.5;
      }
      const auto area = static_cast<double>(region_cells[r].size());
      seg.mask = RegionMask::from_cells(g, std::move(region_cells[r]));
      Color color = background;
      if (regions[r].origin != Origin::kBackground) {
        const Object& obj = objects[static_cast<std::size_t>(regions[r].object)];
        color = obj.color;
        if (regions[r].origin == Origin::kMargin) {
          const double share = static_cast<double>(obj.rect.area()) / area;
          for (int ch = 0; ch < 3; ++ch) {
            color[ch] = share * obj.color[ch] + (1.0 - share) * background[ch];
          }
        }
      }
      seg.feature = {sx / area / g.width, sy / area / g.height, std::sqrt(area / cell_count),
                     color[0], color[1], color[2]};
      segments.push_back(std::move(seg));
    }
  }

  for (Segment& seg : segments) {
    for (double& f : seg.feature) f += rng.normal(0.0, config.feature_noise_std);
    double best = 0.0;
    for (const auto& o : gt_objects) best = std::max(best, jaccard(seg.mask, o.mask));
    seg.reward = std::clamp(best + rng.normal(0.0, config.reward_noise_std), 0.0, 1.0);
  }

  SynthOutput out;
  out.pool = SegmentPool::create(g, layers, kSynthFeatureDim, std::move(segments));
  out.ground_truth = GroundTruth::create(g, std::move(gt_objects));
  return out;
}

json synth_config_to_json(const SynthConfig& c) {
  return json{{"seed", c.seed},
              {"grid", {c.grid.width, c.grid.height}},
              {"num_objects", c.num_objects},
              {"num_layers", c.num_layers},
              {"parts_per_object", c.parts_per_object},
              {"background_tiles", c.background_tiles},
              {"reward_noise_std", c.reward_noise_std},
              {"feature_noise_std", c.feature_noise_std}};
}

}  // namespace subprop
