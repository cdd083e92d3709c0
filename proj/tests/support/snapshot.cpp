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

#include "snapshot.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>
#include <vector>

#include "subprop/errors.hpp"
#include "subprop/io.hpp"

namespace subprop::testing {
namespace {

bool updating() {
  const char* v = std::getenv("SUBPROP_UPDATE_SNAPSHOTS");
  return v != nullptr && std::string(v) == "1";
}

std::string diff_json(const nlohmann::json& want, const nlohmann::json& got,
                      const std::string& where, double tol) {
  if (want.is_number() && got.is_number()) {
    const double a = want.get<double>();
    const double b = got.get<double>();
    if (std::abs(a - b) <= tol) return "";
    std::ostringstream os;
    os.precision(17);
    os << where << ": expected " << a << ", got " << b;
    return os.str();
  }
  if (want.type() != got.type()) return where + ": type differs";
  if (want.is_object()) {
    if (want.size() != got.size()) return where + ": key count differs";
    for (auto it = want.begin(); it != want.end(); ++it) {
      if (!got.contains(it.key())) return where + ": missing key " + it.key();
      auto d = diff_json(it.value(), got.at(it.key()), where + "." + it.key(), tol);
      if (!d.empty()) return d;
    }
    return "";
  }
  if (want.is_array()) {
    if (want.size() != got.size()) return where + ": length differs";
    for (std::size_t i = 0; i < want.size(); ++i) {
      auto d = diff_json(want[i], got[i], where + "[" + std::to_string(i) + "]", tol);
      if (!d.empty()) return d;
    }
    return "";
  }
  return want == got ? "" : where + ": value differs";
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

bool fields_match(const std::string& a, const std::string& b, double tol) {
  if (a == b) return true;
  char* end_a = nullptr;
  char* end_b = nullptr;
  const double x = std::strtod(a.c_str(), &end_a);
  const double y = std::strtod(b.c_str(), &end_b);
  if (end_a == a.c_str() || *end_a != '\0' || end_b == b.c_str() || *end_b != '\0') return false;
  return std::abs(x - y) <= tol;
}

}  // namespace

std::string snapshot_path(const std::string& name) {
  return std::string(SUBPROP_TEST_DATA_DIR) + "/" + name;
}

std::string compare_json_snapshot(const std::string& name, const nlohmann::json& actual,
                                  double tolerance) {
  const std::string path = snapshot_path(name);
  if (updating()) {
    write_text_file(path, dump_json(actual, true) + "\n");
    return "";
  }
  try {
    return diff_json(parse_json_text(read_text_file(path), path), actual, name, tolerance);
  } catch (const Error& e) {
    return e.what();
  }
}

std::string compare_text_snapshot(const std::string& name, const std::string& actual,
                                  double tolerance) {
  const std::string path = snapshot_path(name);
  if (updating()) {
    write_text_file(path, actual);
    return "";
  }
  std::string want;
  try {
    want = read_text_file(path);
  } catch (const Error& e) {
    return e.what();
  }
  const auto wl = split(want, '\n');
  const auto gl = split(actual, '\n');
  if (wl.size() != gl.size()) return name + ": line count differs";
  for (std::size_t i = 0; i < wl.size(); ++i) {
    const auto wf = split(wl[i], ',');
    const auto gf = split(gl[i], ',');
    bool ok = wf.size() == gf.size();
    for (std::size_t f = 0; ok && f < wf.size(); ++f) ok = fields_match(wf[f], gf[f], tolerance);
    if (!ok) return name + ": line " + std::to_string(i + 1) + " differs: '" + gl[i] + "'";
  }
  return "";
}

}  // namespace subprop::testing
