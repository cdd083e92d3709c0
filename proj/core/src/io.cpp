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

#include "subprop/io.hpp"

#include <openssl/evp.h>

#include <array>
#include <cmath>
#include <fstream>
#include <sstream>

#include "subprop/errors.hpp"

namespace subprop {

using nlohmann::json;

namespace {

const json& require(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) fail(ErrorKind::kParse, where + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) {
    fail(ErrorKind::kParse, where + ": missing field \"" + key + "\"");
  }
  return *it;
}

std::int64_t as_integer(const json& v, const std::string& where) {
  if (!v.is_number_integer()) fail(ErrorKind::kParse, where + ": expected an integer");
  return v.get<std::int64_t>();
}

double as_number(const json& v, const std::string& where) {
  if (!v.is_number()) fail(ErrorKind::kParse, where + ": expected a number");
  return v.get<double>();
}

Grid parse_grid(const json& doc, const std::string& where) {
  const json& g = require(doc, "grid", where);
  if (!g.is_array() || g.size() != 2) {
    fail(ErrorKind::kParse, where + ": grid must be [width, height]");
  }
  const std::int64_t w = as_integer(g[0], where + ": grid width");
  const std::int64_t h = as_integer(g[1], where + ": grid height");
  if (w <= 0 || h <= 0 || w > INT32_MAX || h > INT32_MAX) {
    fail(ErrorKind::kValidation, where + ": grid dimensions must be positive");
  }
  return Grid{static_cast<std::int32_t>(w), static_cast<std::int32_t>(h)};
}

RegionMask parse_mask_at(const json& doc, Grid grid, const std::string& where) {
  const json& runs = require(doc, "runs", where);
  if (!runs.is_array()) fail(ErrorKind::kParse, where + ": runs must be an array");
  std::vector<Run> parsed;
  parsed.reserve(runs.size());
  for (const json& r : runs) {
    if (!r.is_array() || r.size() != 2) {
      fail(ErrorKind::kParse, where + ": each run must be [start, length]");
    }
    parsed.push_back({as_integer(r[0], where + ": run start"),
                      as_integer(r[1], where + ": run length")});
  }
  try {
    return RegionMask::from_runs(grid, std::move(parsed));
  } catch (const Error& e) {
    fail(e.kind(), where + ": " + e.what());
  }
}

}  // namespace

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::kIo, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorKind::kIo, "cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) fail(ErrorKind::kIo, "short write to " + path.string());
}

std::string sha256_hex(std::string_view bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest.data(), &len, EVP_sha256(),
                 nullptr) != 1) {
    throw std::runtime_error("SHA-256 computation failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int k = 0; k < len; ++k) {
    out.push_back(kHex[digest[k] >> 4]);
    out.push_back(kHex[digest[k] & 0xF]);
  }
  return out;
}

std::string dump_json(const json& doc, bool pretty) {
  return doc.dump(pretty ? 2 : -1) + "\n";
}

json parse_json_text(std::string_view text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::kParse, origin + ": " + e.what());
  }
}

RegionMask parse_mask(const json& doc, Grid grid) {
  return parse_mask_at(doc, grid, "mask");
}

json mask_to_json(const RegionMask& mask) {
  json runs = json::array();
  for (const Run& r : mask.runs()) runs.push_back({r.start, r.length});
  return json{{"runs", std::move(runs)}};
}

SegmentPool parse_pool(const json& doc, const LoadOptions& options) {
  const std::string where = "pool";
  const Grid grid = parse_grid(doc, where);
  const std::int64_t num_layers = as_integer(require(doc, "num_layers", where), "num_layers");
  const std::int64_t feature_dim =
      as_integer(require(doc, "feature_dim", where), "feature_dim");
  if (num_layers < 1 || num_layers > INT32_MAX) {
    fail(ErrorKind::kValidation, "num_layers must be >= 1");
  }
  if (feature_dim < 1 || feature_dim > INT32_MAX) {
    fail(ErrorKind::kValidation, "feature_dim must be >= 1");
  }
  const json& segs = require(doc, "segments", where);
  if (!segs.is_array()) fail(ErrorKind::kParse, "segments must be an array");

  std::vector<Segment> segments;
  segments.reserve(segs.size());
  for (std::size_t k = 0; k < segs.size(); ++k) {
    const json& s = segs[k];
    Segment seg;
    seg.id = as_integer(require(s, "id", "segments[" + std::to_string(k) + "]"),
                        "segments[" + std::to_string(k) + "].id");
    const std::string who = "segment " + std::to_string(seg.id);
    const std::int64_t layer = as_integer(require(s, "layer", who), who + ": layer");
    if (layer < INT32_MIN || layer > INT32_MAX) {
      fail(ErrorKind::kValidation, who + ": layer out of range");
    }
    seg.layer = static_cast<std::int32_t>(layer);
    const json& feat = require(s, "feature", who);
    if (!feat.is_array()) fail(ErrorKind::kParse, who + ": feature must be an array");
    seg.feature.reserve(feat.size());
    for (const json& x : feat) seg.feature.push_back(as_number(x, who + ": feature"));
    double reward = as_number(require(s, "reward", who), who + ": reward");
    if (options.reward_transform == RewardTransform::kLogistic) {
      reward = 1.0 / (1.0 + std::exp(-reward));
    }
    seg.reward = reward;
    seg.mask = parse_mask_at(require(s, "mask", who), grid, who + ": mask");
    segments.push_back(std::move(seg));
  }
  return SegmentPool::create(grid, static_cast<std::int32_t>(num_layers),
                             static_cast<std::int32_t>(feature_dim), std::move(segments));
}

SegmentPool load_pool(const std::filesystem::path& path, const LoadOptions& options) {
  const std::string text = read_text_file(path);
  return parse_pool(parse_json_text(text, path.string()), options);
}

json pool_to_json(const SegmentPool& pool) {
  json segs = json::array();
  for (const Segment& s : pool.segments()) {
    segs.push_back(json{{"id", s.id},
                        {"layer", s.layer},
                        {"feature", s.feature},
                        {"reward", s.reward},
                        {"mask", mask_to_json(s.mask)}});
  }
  return json{{"grid", {pool.grid().width, pool.grid().height}},
              {"num_layers", pool.num_layers()},
              {"feature_dim", pool.feature_dim()},
              {"segments", std::move(segs)}};
}

std::string serialize_pool(const SegmentPool& pool) {
  return dump_json(pool_to_json(pool));
}

void save_pool(const SegmentPool& pool, const std::filesystem::path& path) {
  write_text_file(path, serialize_pool(pool));
}

GroundTruth parse_ground_truth(const json& doc) {
  const std::string where = "ground truth";
  const Grid grid = parse_grid(doc, where);
  const json& objs = require(doc, "objects", where);
  if (!objs.is_array()) fail(ErrorKind::kParse, "objects must be an array");
  std::vector<GroundTruthObject> objects;
  for (std::size_t k = 0; k < objs.size(); ++k) {
    const json& o = objs[k];
    GroundTruthObject obj;
    obj.instance = as_integer(require(o, "instance", "objects[" + std::to_string(k) + "]"),
                              "objects[" + std::to_string(k) + "].instance");
    const std::string who = "object " + std::to_string(obj.instance);
    const json& cls = require(o, "class", who);
    if (!cls.is_string()) fail(ErrorKind::kParse, who + ": class must be a string");
    obj.class_label = cls.get<std::string>();
    obj.mask = parse_mask_at(require(o, "mask", who), grid, who + ": mask");
    objects.push_back(std::move(obj));
  }
  return GroundTruth::create(grid, std::move(objects));
}

GroundTruth load_ground_truth(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  return parse_ground_truth(parse_json_text(text, path.string()));
}

json ground_truth_to_json(const GroundTruth& gt) {
  json objs = json::array();
  for (const auto& o : gt.objects()) {
    objs.push_back(json{{"instance", o.instance},
                        {"class", o.class_label},
                        {"mask", mask_to_json(o.mask)}});
  }
  return json{{"grid", {gt.grid().width, gt.grid().height}},
              {"objects", std::move(objs)}};
}

}  // namespace subprop
