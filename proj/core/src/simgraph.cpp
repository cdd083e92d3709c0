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

#include "subprop/simgraph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "subprop/errors.hpp"
#include "subprop/io.hpp"

namespace subprop {

using nlohmann::json;

namespace {

void check_rank(const SegmentPool& pool, int neighbor_rank) {
  if (neighbor_rank < 1) fail(ErrorKind::kUsage, "neighbor rank M must be >= 1");
  if (static_cast<std::size_t>(neighbor_rank) >= pool.size()) {
    fail(ErrorKind::kUsage,
         "neighbor rank M=" + std::to_string(neighbor_rank) +
             " needs at least M+1 segments but the pool has " +
             std::to_string(pool.size()) + "; lower M");
  }
}

double scale_at(const SegmentPool& pool, std::size_t i, int neighbor_rank,
                std::vector<double>& buffer) {
  buffer.clear();
  const auto xi = std::span<const double>(pool.segment(i).feature);
  for (std::size_t j = 0; j < pool.size(); ++j) {
    if (j == i) continue;
    buffer.push_back(squared_distance(xi, pool.segment(j).feature));
  }
  auto nth = buffer.begin() + (neighbor_rank - 1);
  std::nth_element(buffer.begin(), nth, buffer.end());
  const double d = std::sqrt(*nth);
  return d > 0.0 ? d : kMinLocalScale;
}

}  // namespace

SimilarityGraph SimilarityGraph::from_edges(
    std::size_t n, std::vector<double> local_scales,
    std::span<const std::tuple<std::uint32_t, std::uint32_t, double>> edges) {
  if (local_scales.size() != n) {
    throw std::invalid_argument("SimilarityGraph: one local scale per vertex required");
  }
  SimilarityGraph g;
  g.local_scales_ = std::move(local_scales);
  std::vector<std::size_t> degree(n, 0);
  for (const auto& [u, v, w] : edges) {
    if (u >= v || v >= n) throw std::invalid_argument("SimilarityGraph: bad edge");
    ++degree[u];
    ++degree[v];
  }
  g.offsets_.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] = g.offsets_[i] + degree[i];
  g.neighbors_.resize(g.offsets_[n]);
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const auto& [u, v, w] : edges) {
    g.neighbors_[cursor[u]++] = {v, w};
    g.neighbors_[cursor[v]++] = {u, w};
  }
  for (std::size_t i = 0; i < n; ++i) {
    auto first = g.neighbors_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[i]);
    auto last = g.neighbors_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[i + 1]);
    std::sort(first, last,
              [](const Neighbor& a, const Neighbor& b) { return a.index < b.index; });
    if (std::adjacent_find(first, last, [](const Neighbor& a, const Neighbor& b) {
          return a.index == b.index;
        }) != last) {
      throw std::invalid_argument("SimilarityGraph: duplicate edge");
    }
  }
  return g;
}

double SimilarityGraph::weight(std::size_t i, std::size_t j) const {
  const auto nbrs = neighbors(i);
  auto it = std::lower_bound(
      nbrs.begin(), nbrs.end(), j,
      [](const Neighbor& nb, std::size_t value) { return nb.index < value; });
  return (it != nbrs.end() && it->index == j) ? it->weight : 0.0;
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double total = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double diff = a[k] - b[k];
    total += diff * diff;
  }
  return total;
}

double gaussian_similarity(double squared_dist, double sigma_i, double sigma_j) {
  return std::max(std::exp(-squared_dist / (sigma_i * sigma_j)),
                  std::numeric_limits<double>::min());
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> build_edges(
    const SegmentPool& pool, int adjacency_dilation) {
  if (adjacency_dilation < 0) fail(ErrorKind::kUsage, "adjacency dilation must be >= 0");
  const std::size_t n = pool.size();
  const auto cells = static_cast<std::size_t>(pool.grid().cells());

  // Cell -> covering segments, in CSR form. Entries per cell ascend by index.
  std::vector<std::uint32_t> offsets(cells + 1, 0);
  for (const Segment& s : pool.segments()) {
    for (const Run& r : s.mask.runs()) {
      for (std::int64_t c = r.start; c < r.end(); ++c) ++offsets[static_cast<std::size_t>(c) + 1];
    }
  }
  for (std::size_t c = 0; c < cells; ++c) offsets[c + 1] += offsets[c];
  std::vector<std::uint32_t> owners(offsets[cells]);
  {
    std::vector<std::uint32_t> cursor(offsets.begin(), offsets.end() - 1);
    for (std::size_t i = 0; i < n; ++i) {
      for (const Run& r : pool.segment(i).mask.runs()) {
        for (std::int64_t c = r.start; c < r.end(); ++c) {
          owners[cursor[static_cast<std::size_t>(c)]++] = static_cast<std::uint32_t>(i);
        }
      }
    }
  }

  // Two masks dilated by d each meet iff one dilated by 2d meets the other:
  // the grid is convex, so a monotone lattice path between the closest cells
  // stays inside it and has a midpoint within d of both ends.
  const int reach = 2 * adjacency_dilation;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  std::vector<std::uint32_t> found;
  std::vector<std::size_t> stamp(n, SIZE_MAX);
  for (std::size_t i = 0; i < n; ++i) {
    const Segment& si = pool.segment(i);
    found.clear();
    auto visit = [&](const RegionMask& region, bool same_layer) {
      for (const Run& r : region.runs()) {
        for (std::int64_t c = r.start; c < r.end(); ++c) {
          const auto cell = static_cast<std::size_t>(c);
          for (std::uint32_t k = offsets[cell]; k < offsets[cell + 1]; ++k) {
            const std::uint32_t j = owners[k];
            if (j <= i || stamp[j] == i) continue;
            if ((pool.segment(j).layer == si.layer) != same_layer) continue;
            stamp[j] = i;
            found.push_back(j);
          }
        }
      }
    };
    visit(si.mask, /*same_layer=*/false);
    visit(reach > 0 ? dilate(si.mask, reach) : si.mask, /*same_layer=*/true);
    std::sort(found.begin(), found.end());
    for (std::uint32_t j : found) edges.emplace_back(static_cast<std::uint32_t>(i), j);
  }
  return edges;
}

double local_scale(const SegmentPool& pool, SegmentId id, int neighbor_rank) {
  check_rank(pool, neighbor_rank);
  const auto index = pool.index_of(id);
  if (!index) fail(ErrorKind::kUsage, "unknown segment id " + std::to_string(id));
  std::vector<double> buffer;
  return scale_at(pool, *index, neighbor_rank, buffer);
}

std::vector<double> local_scales(const SegmentPool& pool, int neighbor_rank) {
  check_rank(pool, neighbor_rank);
  std::vector<double> scales(pool.size());
  std::vector<double> buffer;
  buffer.reserve(pool.size());
  for (std::size_t i = 0; i < pool.size(); ++i) {
    scales[i] = scale_at(pool, i, neighbor_rank, buffer);
  }
  return scales;
}

SimilarityGraph build_graph(const SegmentPool& pool, const GraphParams& params) {
  std::vector<double> scales = local_scales(pool, params.neighbor_rank);
  const auto pairs = build_edges(pool, params.adjacency_dilation);
  std::vector<std::tuple<std::uint32_t, std::uint32_t, double>> edges;
  edges.reserve(pairs.size());
  for (const auto& [u, v] : pairs) {
    const double d2 = squared_distance(pool.segment(u).feature, pool.segment(v).feature);
    edges.emplace_back(u, v, gaussian_similarity(d2, scales[u], scales[v]));
  }
  return SimilarityGraph::from_edges(pool.size(), std::move(scales), edges);
}

std::string graph_cache_key(const SegmentPool& pool, const GraphParams& params) {
  return sha256_hex(serialize_pool(pool) + "|neighbor_rank=" +
                    std::to_string(params.neighbor_rank) +
                    "|adjacency_dilation=" + std::to_string(params.adjacency_dilation));
}

json graph_to_json(const SimilarityGraph& graph, const SegmentPool& pool,
                   const GraphParams& params) {
  json edges = json::array();
  for (std::size_t u = 0; u < graph.size(); ++u) {
    for (const Neighbor& nb : graph.neighbors(u)) {
      if (nb.index <= u) continue;
      edges.push_back({pool.segment(u).id, pool.segment(nb.index).id, nb.weight});
    }
  }
  return json{{"key", graph_cache_key(pool, params)},
              {"neighbor_rank", params.neighbor_rank},
              {"adjacency_dilation", params.adjacency_dilation},
              {"num_segments", pool.size()},
              {"local_scales", graph.local_scales()},
              {"edges", std::move(edges)}};
}

std::optional<SimilarityGraph> graph_from_json(const json& doc, const SegmentPool& pool,
                                               const GraphParams& params) {
  try {
    if (!doc.is_object() || doc.value("key", std::string()) != graph_cache_key(pool, params)) {
      return std::nullopt;
    }
    auto scales = doc.at("local_scales").get<std::vector<double>>();
    if (scales.size() != pool.size()) fail(ErrorKind::kValidation, "graph cache: wrong size");
    std::vector<std::tuple<std::uint32_t, std::uint32_t, double>> edges;
    for (const json& e : doc.at("edges")) {
      const auto u = pool.index_of(e.at(0).get<SegmentId>());
      const auto v = pool.index_of(e.at(1).get<SegmentId>());
      if (!u || !v || *u >= *v) fail(ErrorKind::kValidation, "graph cache: bad edge");
      edges.emplace_back(static_cast<std::uint32_t>(*u), static_cast<std::uint32_t>(*v),
                         e.at(2).get<double>());
    }
    return SimilarityGraph::from_edges(pool.size(), std::move(scales), edges);
  } catch (const json::exception& e) {
    fail(ErrorKind::kParse, std::string("graph cache: ") + e.what());
  } catch (const std::invalid_argument& e) {
    fail(ErrorKind::kValidation, std::string("graph cache: ") + e.what());
  }
}

SimilarityGraph load_or_build_graph(const std::filesystem::path& path,
                                    const SegmentPool& pool, const GraphParams& params) {
  if (std::filesystem::exists(path)) {
    const std::string text = read_text_file(path);
    if (auto cached = graph_from_json(parse_json_text(text, path.string()), pool, params)) {
      return *std::move(cached);
    }
  }
  SimilarityGraph graph = build_graph(pool, params);
  write_text_file(path, dump_json(graph_to_json(graph, pool, params)));
  return graph;
}

}  // namespace subprop
