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

#ifndef SUBPROP_SIMGRAPH_HPP_
#define SUBPROP_SIMGRAPH_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <tuple>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "subprop/pool.hpp"

namespace subprop {

// Floor applied to a local scale whose M'th neighbour sits at distance 0.
inline constexpr double kMinLocalScale = 1e-9;

struct GraphParams {
  int neighbor_rank = 7;       // M: sigma_i is the distance to the M'th nearest segment
  int adjacency_dilation = 1;  // cells of 4-connected dilation for same-layer adjacency
};

struct Neighbor {
  std::uint32_t index = 0;
  double weight = 0.0;

  bool operator==(const Neighbor&) const = default;
};

// Sparse symmetric similarity graph over pool indices. Self-edges are never
// stored. Neighbour lists are sorted by index.
class SimilarityGraph {
 public:
  SimilarityGraph() = default;

  // `edges` holds (u, v, w) with u < v; each unordered pair at most once.
  static SimilarityGraph from_edges(
      std::size_t n, std::vector<double> local_scales,
      std::span<const std::tuple<std::uint32_t, std::uint32_t, double>> edges);

  std::size_t size() const { return local_scales_.size(); }
  std::size_t num_edges() const { return neighbors_.size() / 2; }

  std::span<const Neighbor> neighbors(std::size_t i) const {
    return {neighbors_.data() + offsets_[i], neighbors_.data() + offsets_[i + 1]};
  }
  double local_scale(std::size_t i) const { return local_scales_[i]; }
  std::span<const double> local_scales() const { return local_scales_; }

  // Edge weight, 0 when i and j are not adjacent (including i == j).
  double weight(std::size_t i, std::size_t j) const;

  bool operator==(const SimilarityGraph&) const = default;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<Neighbor> neighbors_;
  std::vector<double> local_scales_;
};

double squared_distance(std::span<const double> a, std::span<const double> b);

// exp(-d^2 / (sigma_i * sigma_j)), floored at the smallest normal double so
// stored weights stay strictly positive.
double gaussian_similarity(double squared_dist, double sigma_i, double sigma_j);

// Unordered index pairs (u < v) connected because their masks overlap across
// layers, or touch within a layer once each is dilated by
// `adjacency_dilation` cells. Sorted lexicographically.
std::vector<std::pair<std::uint32_t, std::uint32_t>> build_edges(
    const SegmentPool& pool, int adjacency_dilation);

// Distance from segment `id` to its M'th nearest other segment in feature
// space, over the whole pool. Throws Error(kUsage) when M >= |V|.
double local_scale(const SegmentPool& pool, SegmentId id, int neighbor_rank);

// local_scale for every pool index.
std::vector<double> local_scales(const SegmentPool& pool, int neighbor_rank);

SimilarityGraph build_graph(const SegmentPool& pool, const GraphParams& params);

// --- graph cache ---------------------------------------------------------
//
// { "key": <sha256>, "neighbor_rank": M, "adjacency_dilation": d,
//   "num_segments": n, "local_scales": [..],
//   "edges": [[id_u, id_v, w], ..] }
//
// The key hashes the canonical pool serialization together with the
// parameters, so a cache built for another pool or setting is never reused.

std::string graph_cache_key(const SegmentPool& pool, const GraphParams& params);
nlohmann::json graph_to_json(const SimilarityGraph& graph, const SegmentPool& pool,
                             const GraphParams& params);

// Returns nullopt when the cache was built for a different pool or params.
std::optional<SimilarityGraph> graph_from_json(const nlohmann::json& doc,
                                               const SegmentPool& pool,
                                               const GraphParams& params);

// Loads `path` if it exists and matches; otherwise builds the graph and
// writes it to `path`.
SimilarityGraph load_or_build_graph(const std::filesystem::path& path,
                                    const SegmentPool& pool, const GraphParams& params);

}  // namespace subprop

#endif  // SUBPROP_SIMGRAPH_HPP_
