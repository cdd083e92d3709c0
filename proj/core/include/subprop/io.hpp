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

#ifndef SUBPROP_IO_HPP_
#define SUBPROP_IO_HPP_

#include <filesystem>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "subprop/pool.hpp"

namespace subprop {

enum class RewardTransform {
  kNone,
  kLogistic,  // r = 1 / (1 + exp(-s)) applied to the raw file value s
};

struct LoadOptions {
  RewardTransform reward_transform = RewardTransform::kNone;
};

// --- plain files ---------------------------------------------------------

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

// Lowercase hex SHA-256 of `bytes`.
std::string sha256_hex(std::string_view bytes);

// Deterministic text form used for every JSON file this library writes.
// Compact output suits bulk data (pools, graph caches); pretty output suits
// small result files.
std::string dump_json(const nlohmann::json& doc, bool pretty = false);

// --- pool files ----------------------------------------------------------
//
// { "grid": [W, H], "num_layers": L, "feature_dim": F,
//   "segments": [ { "id", "layer", "feature": [..], "reward",
//                   "mask": { "runs": [[start, len], ..] } }, .. ] }
//
// Unknown top-level keys are ignored, so tools may attach provenance.

SegmentPool parse_pool(const nlohmann::json& doc, const LoadOptions& options = {});
SegmentPool load_pool(const std::filesystem::path& path, const LoadOptions& options = {});

// Canonical form: segments sorted by id, runs sorted by start.
nlohmann::json pool_to_json(const SegmentPool& pool);
std::string serialize_pool(const SegmentPool& pool);
void save_pool(const SegmentPool& pool, const std::filesystem::path& path);

// --- ground-truth files --------------------------------------------------
//
// { "grid": [W, H], "objects": [ { "instance", "class", "mask": {..} } ] }

GroundTruth parse_ground_truth(const nlohmann::json& doc);
GroundTruth load_ground_truth(const std::filesystem::path& path);
nlohmann::json ground_truth_to_json(const GroundTruth& gt);

nlohmann::json mask_to_json(const RegionMask& mask);
RegionMask parse_mask(const nlohmann::json& doc, Grid grid);

nlohmann::json parse_json_text(std::string_view text, const std::string& origin);

}  // namespace subprop

#endif  // SUBPROP_IO_HPP_
