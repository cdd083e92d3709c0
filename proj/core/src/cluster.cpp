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

#include "subprop/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "subprop/errors.hpp"
#include "subprop/greedy_engine.hpp"

namespace subprop {

using nlohmann::json;

namespace {

std::size_t ceil_sqrt(std::size_t n) {
  auto r = static_cast<std::size_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while (r * r < n) ++r;
  return r;
}

}  // namespace

ClusterAssignment ClusterAssignment::create(const SegmentPool& pool,
                                            std::vector<int> cluster_of) {
  if (cluster_of.size() != pool.size()) {
    fail(ErrorKind::kValidation, "cluster assignment must cover every segment");
  }
  ClusterAssignment out;
  out.clusters_per_layer_.assign(static_cast<std::size_t>(pool.num_layers()), 0);
  out.slot_of_.resize(pool.size());
  std::size_t slot_base = 0;
  for (std::int32_t l = 0; l < pool.num_layers(); ++l) {
    const auto members = pool.layer_members(l);
    int t_max = -1;
    for (std::size_t i : members) {
      if (cluster_of[i] < 0) {
        fail(ErrorKind::kValidation, "segment " + std::to_string(pool.segment(i).id) +
                                         ": negative cluster index");
      }
      t_max = std::max(t_max, cluster_of[i]);
    }
    std::vector<bool> used(static_cast<std::size_t>(t_max) + 1, false);
    for (std::size_t i : members) used[static_cast<std::size_t>(cluster_of[i])] = true;
    for (std::size_t t = 0; t < used.size(); ++t) {
      if (!used[t]) {
        fail(ErrorKind::kValidation, "layer " + std::to_string(l) + ": cluster " +
                                         std::to_string(t) + " is empty");
      }
    }
    out.clusters_per_layer_[static_cast<std::size_t>(l)] = t_max + 1;
    for (std::size_t i : members) {
      out.slot_of_[i] = slot_base + static_cast<std::size_t>(cluster_of[i]);
    }
    slot_base += used.size();
  }
  out.total_clusters_ = slot_base;
  out.cluster_of_ = std::move(cluster_of);
  return out;
}

double exemplar_similarity(const SegmentPool& pool, const SimilarityGraph& graph,
                           std::size_t i, std::size_t j) {
  if (i == j) return 1.0;
  const double d2 = squared_distance(pool.segment(i).feature, pool.segment(j).feature);
  return gaussian_similarity(d2, graph.local_scale(i), graph.local_scale(j));
}

LayerPartition cluster_layer(const SegmentPool& pool, const SimilarityGraph& graph,
                             std::int32_t layer, int num_clusters) {
  if (layer < 0 || layer >= pool.num_layers()) {
    fail(ErrorKind::kUsage, "layer " + std::to_string(layer) + " does not exist");
  }
  const auto members = pool.layer_members(layer);
  const std::size_t m = members.size();
  if (num_clusters < 1 || static_cast<std::size_t>(num_clusters) > m) {
    fail(ErrorKind::kValidation, "layer " + std::to_string(layer) + ": cannot form " +
                                     std::to_string(num_clusters) + " clusters from " +
                                     std::to_string(m) + " segments");
  }

  LayerPartition out;
  out.cluster_of.assign(m, -1);
  if (static_cast<std::size_t>(num_clusters) == m) {
    for (std::size_t a = 0; a < m; ++a) {
      out.exemplars.push_back(members[a]);
      out.cluster_of[a] = static_cast<int>(a);
    }
    return out;
  }

  auto sim = [&](std::size_t a, std::size_t b) {
    return exemplar_similarity(pool, graph, members[a], members[b]);
  };
  std::vector<double> best(m, 0.0);
  auto gain = [&](std::size_t c) {
    double total = 0.0;
    for (std::size_t a = 0; a < m; ++a) {
      const double s = sim(a, c);
      if (s > best[a]) total += s - best[a];
    }
    return total;
  };
  auto commit = [&](std::size_t c) {
    for (std::size_t a = 0; a < m; ++a) best[a] = std::max(best[a], sim(a, c));
  };
  const GreedyTrace trace =
      lazy_greedy(m, static_cast<std::size_t>(num_clusters), gain, commit);

  for (std::size_t t = 0; t < trace.order.size(); ++t) {
    out.exemplars.push_back(members[trace.order[t]]);
    out.cluster_of[trace.order[t]] = static_cast<int>(t);
  }
  // Exemplar ids ascending, so the first strict maximum wins ties.
  std::vector<std::size_t> by_id(trace.order);
  std::sort(by_id.begin(), by_id.end());
  for (std::size_t a = 0; a < m; ++a) {
    if (out.cluster_of[a] >= 0) continue;
    std::size_t pick = by_id.front();
    double pick_sim = -1.0;
    for (std::size_t e : by_id) {
      const double s = sim(a, e);
      if (s > pick_sim) {
        pick = e;
        pick_sim = s;
      }
    }
    out.cluster_of[a] = out.cluster_of[pick];
  }
  return out;
}

int clusters_for_layer(const ClusterPolicy& policy, std::int32_t layer,
                       std::size_t layer_size) {
  if (!policy.clusters_per_layer.empty()) {
    const int t = policy.clusters_per_layer.at(static_cast<std::size_t>(layer));
    if (t < 1 || static_cast<std::size_t>(t) > layer_size) {
      fail(ErrorKind::kValidation,
           "malformed cluster policy: layer " + std::to_string(layer) + " has " +
               std::to_string(layer_size) + " segments but asks for " +
               std::to_string(t) + " clusters");
    }
    return t;
  }
  if (policy.coarse_threshold < 0) {
    fail(ErrorKind::kValidation, "malformed cluster policy: negative coarse threshold");
  }
  if (layer_size <= static_cast<std::size_t>(policy.coarse_threshold)) {
    return static_cast<int>(layer_size);
  }
  return static_cast<int>(ceil_sqrt(layer_size));
}

ClusterAssignment cluster_pool(const SegmentPool& pool, const SimilarityGraph& graph,
                               const ClusterPolicy& policy) {
  if (!policy.clusters_per_layer.empty() &&
      policy.clusters_per_layer.size() != static_cast<std::size_t>(pool.num_layers())) {
    fail(ErrorKind::kValidation,
         "malformed cluster policy: " + std::to_string(policy.clusters_per_layer.size()) +
             " cluster counts given for " + std::to_string(pool.num_layers()) + " layers");
  }
  std::vector<int> cluster_of(pool.size(), -1);
  for (std::int32_t l = 0; l < pool.num_layers(); ++l) {
    const auto members = pool.layer_members(l);
    const int t = clusters_for_layer(policy, l, members.size());
    const LayerPartition part = cluster_layer(pool, graph, l, t);
    for (std::size_t a = 0; a < members.size(); ++a) cluster_of[members[a]] = part.cluster_of[a];
  }
  return ClusterAssignment::create(pool, std::move(cluster_of));
}

json clusters_to_json(const ClusterAssignment& clusters, const SegmentPool& pool) {
  json map = json::object();
  for (std::size_t i = 0; i < pool.size(); ++i) {
    map[std::to_string(pool.segment(i).id)] = {pool.segment(i).layer, clusters.cluster_of(i)};
  }
  return json{{"clusters", std::move(map)}};
}

ClusterAssignment clusters_from_json(const json& doc, const SegmentPool& pool) {
  if (!doc.is_object() || !doc.contains("clusters") || !doc["clusters"].is_object()) {
    fail(ErrorKind::kParse, "cluster file: missing \"clusters\" object");
  }
  const json& map = doc["clusters"];
  std::vector<int> cluster_of(pool.size(), -1);
  for (const auto& [key, value] : map.items()) {
    SegmentId id = 0;
    try {
      std::size_t used = 0;
      id = std::stoll(key, &used);
      if (used != key.size()) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      fail(ErrorKind::kParse, "cluster file: key \"" + key + "\" is not a segment id");
    }
    const auto index = pool.index_of(id);
    if (!index) fail(ErrorKind::kValidation, "cluster file: unknown segment " + key);
    if (!value.is_array() || value.size() != 2 || !value[0].is_number_integer() ||
        !value[1].is_number_integer()) {
      fail(ErrorKind::kParse, "cluster file: segment " + key + " needs [layer, cluster]");
    }
    if (value[0].get<std::int64_t>() != pool.segment(*index).layer) {
      fail(ErrorKind::kValidation, "cluster file: segment " + key + " has the wrong layer");
    }
    const auto t = value[1].get<std::int64_t>();
    if (t < 0 || t > INT32_MAX) {
      fail(ErrorKind::kValidation, "cluster file: segment " + key + " has a bad cluster index");
    }
    cluster_of[*index] = static_cast<int>(t);
  }
  for (std::size_t i = 0; i < pool.size(); ++i) {
    if (cluster_of[i] < 0) {
      fail(ErrorKind::kValidation, "cluster file: segment " +
                                       std::to_string(pool.segment(i).id) + " is missing");
    }
  }
  return ClusterAssignment::create(pool, std::move(cluster_of));
}

}  // namespace subprop
