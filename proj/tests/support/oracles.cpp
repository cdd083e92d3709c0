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

#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

namespace subprop::testing {

CellSet cell_set(const RegionMask& m) {
  CellSet out;
  for (const Run& r : m.runs()) {
    for (std::int64_t c = r.start; c < r.end(); ++c) out.insert(c);
  }
  return out;
}

CellSet dilate_cells(const CellSet& cells, Grid grid, int radius) {
  CellSet current = cells;
  for (int step = 0; step < radius; ++step) {
    CellSet next = current;
    for (std::int64_t c : current) {
      const std::int64_t x = c % grid.width;
      const std::int64_t y = c / grid.width;
      if (x > 0) next.insert(c - 1);
      if (x + 1 < grid.width) next.insert(c + 1);
      if (y > 0) next.insert(c - grid.width);
      if (y + 1 < grid.height) next.insert(c + grid.width);
    }
    current = std::move(next);
  }
  return current;
}

std::int64_t intersection_size(const CellSet& a, const CellSet& b) {
  std::int64_t n = 0;
  for (std::int64_t c : a) n += b.count(c);
  return n;
}

double jaccard_cells(const CellSet& a, const CellSet& b) {
  const auto inter = intersection_size(a, b);
  const auto uni = static_cast<std::int64_t>(a.size() + b.size()) - inter;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> brute_force_edges(const SegmentPool& pool,
                                                                       int dilation) {
  const std::size_t n = pool.size();
  std::vector<CellSet> raw(n), grown(n);
  for (std::size_t i = 0; i < n; ++i) {
    raw[i] = cell_set(pool.segment(i).mask);
    grown[i] = dilate_cells(raw[i], pool.grid(), dilation);
  }
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      const bool same = pool.segment(u).layer == pool.segment(v).layer;
      const bool linked = same ? intersection_size(grown[u], grown[v]) > 0
                               : intersection_size(raw[u], raw[v]) > 0;
      if (linked) edges.emplace_back(static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(v));
    }
  }
  return edges;
}

namespace {

double distance(const Segment& a, const Segment& b) {
  double s = 0.0;
  for (std::size_t d = 0; d < a.feature.size(); ++d) {
    const double diff = a.feature[d] - b.feature[d];
    s += diff * diff;
  }
  return std::sqrt(s);
}

double kernel(const SegmentPool& pool, std::span<const double> scales, std::size_t i,
              std::size_t j) {
  if (i == j) return 1.0;
  const double d = distance(pool.segment(i), pool.segment(j));
  return std::exp(-(d * d) / (scales[i] * scales[j]));
}

}  // namespace

double sorted_local_scale(const SegmentPool& pool, std::size_t index, int neighbor_rank) {
  std::vector<double> d;
  for (std::size_t j = 0; j < pool.size(); ++j) {
    if (j != index) d.push_back(distance(pool.segment(index), pool.segment(j)));
  }
  std::sort(d.begin(), d.end());
  return std::max(d[static_cast<std::size_t>(neighbor_rank) - 1], 1e-9);
}

DenseObjective::DenseObjective(const SegmentPool& pool, const ClusterAssignment& clusters,
                               const GraphParams& params)
    : n_(pool.size()), w_(n_, std::vector<double>(n_, 0.0)) {
  std::vector<double> scales(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    scales[i] = sorted_local_scale(pool, i, params.neighbor_rank);
  }
  for (const auto& [u, v] : brute_force_edges(pool, params.adjacency_dilation)) {
    w_[u][v] = w_[v][u] = kernel(pool, scales, u, v);
  }
  layer_size_.assign(static_cast<std::size_t>(pool.num_layers()), 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    w_[i][i] = 1.0;
    const Segment& s = pool.segment(i);
    layer_.push_back(s.layer);
    cluster_.emplace_back(s.layer, clusters.cluster_of(i));
    reward_.push_back(s.reward);
    layer_size_[static_cast<std::size_t>(s.layer)] += 1.0;
  }
}

double DenseObjective::coverage(std::span<const std::size_t> subset) const {
  double total = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    double best = 0.0;
    for (std::size_t j : subset) best = std::max(best, w_[i][j]);
    total += best;
  }
  return total;
}

double DenseObjective::diversity(std::span<const std::size_t> subset) const {
  std::map<std::pair<std::int32_t, int>, double> mass;
  for (std::size_t j : subset) {
    double q = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      if (layer_[i] == layer_[j]) q += w_[i][j];
    }
    mass[cluster_[j]] += q / layer_size_[static_cast<std::size_t>(layer_[j])];
  }
  double total = 0.0;
  for (const auto& [key, m] : mass) total += std::sqrt(m);
  return total;
}

double DenseObjective::reward(std::span<const std::size_t> subset) const {
  std::map<std::int32_t, double> sum;
  for (std::size_t j : subset) sum[layer_[j]] += reward_[j];
  double total = 0.0;
  for (const auto& [layer, r] : sum) total += std::sqrt(r);
  return total;
}

namespace {

// Calls visit(subset) for every subset of {0..n-1} with exactly `size`
// members, in lexicographic order.
void for_each_subset(std::size_t n, std::size_t size,
                     const std::function<void(std::span<const std::size_t>)>& visit) {
  std::vector<std::size_t> idx(size);
  for (std::size_t i = 0; i < size; ++i) idx[i] = i;
  if (size > n) return;
  while (true) {
    visit(idx);
    std::size_t pos = size;
    while (pos > 0 && idx[pos - 1] == n - size + pos - 1) --pos;
    if (pos == 0) return;
    ++idx[pos - 1];
    for (std::size_t i = pos; i < size; ++i) idx[i] = idx[i - 1] + 1;
  }
}

}  // namespace

double exhaustive_optimum(const DenseObjective& f, std::size_t k, double alpha, double beta) {
  double best = 0.0;
  for (std::size_t size = 1; size <= std::min(k, f.size()); ++size) {
    for_each_subset(f.size(), size, [&](std::span<const std::size_t> s) {
      best = std::max(best, f.total(s, alpha, beta));
    });
  }
  return best;
}

double facility_location_score(const SegmentPool& pool, std::span<const double> scales,
                               std::int32_t layer, std::span<const std::size_t> exemplars) {
  double total = 0.0;
  for (std::size_t i : pool.layer_members(layer)) {
    double best = 0.0;
    for (std::size_t e : exemplars) best = std::max(best, kernel(pool, scales, i, e));
    total += best;
  }
  return total;
}

double best_facility_location_score(const SegmentPool& pool, std::span<const double> scales,
                                    std::int32_t layer, int t) {
  const auto members = pool.layer_members(layer);
  double best = 0.0;
  for_each_subset(members.size(), static_cast<std::size_t>(t),
                  [&](std::span<const std::size_t> s) {
                    std::vector<std::size_t> ex;
                    for (std::size_t p : s) ex.push_back(members[p]);
                    best = std::max(best, facility_location_score(pool, scales, layer, ex));
                  });
  return best;
}

}  // namespace subprop::testing
