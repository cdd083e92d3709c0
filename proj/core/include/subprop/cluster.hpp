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

#ifndef SUBPROP_CLUSTER_HPP_
#define SUBPROP_CLUSTER_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "subprop/pool.hpp"
#include "subprop/simgraph.hpp"

namespace subprop {

// How many exemplar clusters each layer receives.
struct ClusterPolicy {
  // Layers this small are split into singletons.
  int coarse_threshold = 8;
  // When non-empty, one explicit cluster count per layer; overrides the
  // threshold and the sqrt default.
  std::vector<int> clusters_per_layer;
};

struct LayerPartition {
  std::vector<std::size_t> exemplars;  // pool indices, in selection order
  std::vector<int> cluster_of;         // cluster of each layer member, same order as layer_members
};

// Per-segment (layer, cluster) labels. Within a layer, cluster ids run over
// [0, T_l) and every cluster is non-empty.
class ClusterAssignment {
 public:
  ClusterAssignment() = default;

  // `cluster_of[i]` is the cluster of pool index i within its layer. Throws
  // Error(kValidation) when a layer's ids are not exactly 0..T_l-1.
  static ClusterAssignment create(const SegmentPool& pool, std::vector<int> cluster_of);

  std::size_t size() const { return cluster_of_.size(); }
  int cluster_of(std::size_t index) const { return cluster_of_[index]; }
  std::span<const int> clusters_per_layer() const { return clusters_per_layer_; }

  // Dense id of (layer, cluster) in [0, total_clusters()).
  std::size_t slot_of(std::size_t index) const { return slot_of_[index]; }
  std::size_t total_clusters() const { return total_clusters_; }

  bool operator==(const ClusterAssignment& other) const {
    return cluster_of_ == other.cluster_of_;
  }

 private:
  std::vector<int> cluster_of_;
  std::vector<int> clusters_per_layer_;
  std::vector<std::size_t> slot_of_;
  std::size_t total_clusters_ = 0;
};

// Similarity used for exemplar selection: the Gaussian kernel of the graph's
// local scales evaluated for any pair (edge or not), 1 on the diagonal.
double exemplar_similarity(const SegmentPool& pool, const SimilarityGraph& graph,
                           std::size_t i, std::size_t j);

// Greedily picks `num_clusters` exemplars of `layer` maximizing the
// facility-location score sum_i max_e exemplar_similarity(i, e), then assigns
// each other member to its most similar exemplar (lowest id on ties).
// Exemplars always label their own cluster.
LayerPartition cluster_layer(const SegmentPool& pool, const SimilarityGraph& graph,
                             std::int32_t layer, int num_clusters);

// Cluster count for a layer of `layer_size` segments under `policy`.
int clusters_for_layer(const ClusterPolicy& policy, std::int32_t layer,
                       std::size_t layer_size);

ClusterAssignment cluster_pool(const SegmentPool& pool, const SimilarityGraph& graph,
                               const ClusterPolicy& policy);

// --- cluster files -------------------------------------------------------
//
// { "clusters": { "<segment id>": [layer, cluster], .. } }

nlohmann::json clusters_to_json(const ClusterAssignment& clusters, const SegmentPool& pool);
ClusterAssignment clusters_from_json(const nlohmann::json& doc, const SegmentPool& pool);

}  // namespace subprop

#endif  // SUBPROP_CLUSTER_HPP_
